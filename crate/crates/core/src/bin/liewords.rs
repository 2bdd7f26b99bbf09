//! Command-line front end for the experiment harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liewords::harness::{self, Command, ExperimentConfig, GroupKind, THREADS_ENV};

#[derive(Parser)]
#[command(
    name = "liewords",
    version,
    about = "Random words in T^n and SU(2): seeded experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Spectral gap of the averaging operator over seeded alphabets
    Gap(Flags),
    /// L2 discrepancy of heat-smoothed word measures, with a length sweep
    Discrepancy(Flags),
    /// Net check of word sets at the planned (k, l)
    Cover(Flags),
    /// Heat kernel norm, trace, Gaussian constant and truncation checks
    Heat(Flags),
    /// Eigenvalue counting function against the Weyl law
    Weyl(Flags),
    /// Counting lower bounds for abelian words on the torus
    Lowerbound(Flags),
    /// The full oracle suite
    Selftest(Flags),
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Torus,
    Su2,
}

#[derive(Args)]
struct Flags {
    /// JSON config file; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    group: Option<GroupArg>,
    /// Torus dimension
    #[arg(long)]
    n: Option<usize>,
    /// Number of generators
    #[arg(long)]
    k: Option<usize>,
    /// Word length
    #[arg(long)]
    ell: Option<usize>,
    /// Largest word length in the discrepancy sweep
    #[arg(long)]
    ell_max: Option<usize>,
    /// Heat time
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    /// Net radius
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// 2k + l for lowerbound
    #[arg(long)]
    m: Option<u64>,
    /// Eigenvalue cutoff M
    #[arg(long)]
    cutoff: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    probes: Option<usize>,
    /// Group constant used in the planning formulas
    #[arg(long)]
    cg: Option<f64>,
    #[arg(long = "seed")]
    master_seed: Option<u64>,
    #[arg(long, env = THREADS_ENV)]
    threads: Option<usize>,
    /// Output directory
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write plot.gp
    #[arg(long)]
    gnuplot: bool,
    /// Also write timings.csv (not deterministic)
    #[arg(long)]
    timings: bool,
}

impl Flags {
    fn into_config(self, command: Command) -> Result<ExperimentConfig, harness::HarnessError> {
        let base = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        let over = ExperimentConfig {
            command: Some(command),
            group: self.group.map(|g| match g {
                GroupArg::Torus => GroupKind::Torus,
                GroupArg::Su2 => GroupKind::Su2,
            }),
            n: self.n,
            k: self.k,
            ell: self.ell,
            ell_max: self.ell_max,
            t: self.t,
            eta: self.eta,
            r: self.r,
            delta: self.delta,
            m: self.m,
            cutoff: self.cutoff,
            lambda: self.lambda,
            trials: self.trials,
            probes: self.probes,
            cg: self.cg,
            master_seed: self.master_seed,
            threads: self.threads,
            output: self.output,
            gnuplot: self.gnuplot.then_some(true),
            timings: self.timings.then_some(true),
        };
        Ok(base.overlay(over))
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let (command, flags) = match cli.command {
        Cmd::Gap(f) => (Command::Gap, f),
        Cmd::Discrepancy(f) => (Command::Discrepancy, f),
        Cmd::Cover(f) => (Command::Cover, f),
        Cmd::Heat(f) => (Command::Heat, f),
        Cmd::Weyl(f) => (Command::Weyl, f),
        Cmd::Lowerbound(f) => (Command::Lowerbound, f),
        Cmd::Selftest(f) => (Command::Selftest, f),
    };
    let result = flags.into_config(command).and_then(|c| harness::run(&c));
    match result {
        Ok(out) => {
            for c in &out.summary.checks {
                let tag = match (c.holds, c.asserted) {
                    (true, _) => "PASS",
                    (false, true) => "FAIL",
                    (false, false) => "note",
                };
                println!("{tag}  {}  (measured {}, bound {})", c.name, c.measured, c.paper_bound);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&out.summary.results).unwrap_or_default()
            );
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("liewords: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
