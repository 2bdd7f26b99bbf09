//! Seeded experiment runner behind the `liewords` binary.
//!
//! A run resolves an [`ExperimentConfig`], executes one command inside a
//! dedicated thread pool, and renders deterministic outputs:
//!
//! * `summary.json`: parameters, results and the list of [`Check`]s;
//! * one CSV per table (`trials.csv`, `sweep.csv`, …);
//! * `plot.gp` when a gnuplot script is requested.
//!
//! Trial `i` always uses the seed `trial_seed(master_seed, i)` and results
//! are reduced in trial order, so the bytes of these files do not depend on
//! the thread count. Wall-clock times go to `timings.csv` only, on request.

mod commands;
pub mod config;
pub mod selftest;

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use commands::execute_in_current_pool;
pub use commands::{default_gap_cutoff, SELFTEST_SEED};
pub use config::{Command, ExperimentConfig, GroupKind};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable consulted for the worker thread count.
pub const THREADS_ENV: &str = "LIEWORDS_THREADS";

pub const SEED_RULE: &str = "trial_seed = splitmix64(splitmix64(master_seed) ^ trial_index)";

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Resource(crate::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => EXIT_USAGE,
            HarnessError::Resource(_) => EXIT_RESOURCE,
            HarnessError::Io(_) => EXIT_INVARIANT,
        }
    }
}

impl From<crate::Error> for HarnessError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::ResourceCap { .. } => HarnessError::Resource(e),
            other => HarnessError::Usage(other.to_string()),
        }
    }
}

/// One audited claim: a bound, the measured value and whether it holds.
/// Checks with `asserted = false` are reported but do not affect the exit code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub paper_bound: f64,
    pub measured: f64,
    pub holds: bool,
    pub asserted: bool,
}

impl Check {
    /// Holds when `measured ≤ bound`.
    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            paper_bound: bound,
            measured,
            holds: measured <= bound,
            asserted: true,
        }
    }

    /// Holds when `measured ≥ bound`.
    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            paper_bound: bound,
            measured,
            holds: measured >= bound,
            asserted: true,
        }
    }

    /// Holds when `|measured − target| ≤ rel_tol·|target|`; `paper_bound` is the target.
    pub fn relative(name: impl Into<String>, measured: f64, target: f64, rel_tol: f64) -> Self {
        Self {
            name: name.into(),
            paper_bound: target,
            measured,
            holds: (measured - target).abs() <= rel_tol * target.abs(),
            asserted: true,
        }
    }

    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Self {
            name: name.into(),
            paper_bound: 1.0,
            measured: if holds { 1.0 } else { 0.0 },
            holds,
            asserted: true,
        }
    }

    pub fn informational(mut self) -> Self {
        self.asserted = false;
        self
    }

    pub fn failed(&self) -> bool {
        self.asserted && !self.holds
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub command: Command,
    pub group: Option<String>,
    pub master_seed: Option<u64>,
    pub rng: &'static str,
    pub seed_rule: &'static str,
    pub parameters: serde_json::Value,
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub summary: Summary,
    /// `(file name, CSV text)`.
    pub tables: Vec<(String, String)>,
    pub gnuplot: Option<String>,
    /// `timings.csv` contents; not part of the deterministic output.
    pub timings: Option<String>,
}

impl RunOutput {
    pub fn passed(&self) -> bool {
        self.summary.passed
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_INVARIANT
        }
    }

    /// The deterministic files, keyed by name.
    pub fn files(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        let summary = serde_json::to_string_pretty(&self.summary).expect("summary serializes") + "\n";
        out.insert("summary.json".to_string(), summary);
        for (name, text) in &self.tables {
            out.insert(name.clone(), text.clone());
        }
        if let Some(gp) = &self.gnuplot {
            out.insert("plot.gp".to_string(), gp.clone());
        }
        out
    }

    pub fn write_to(&self, dir: &Path) -> Result<(), HarnessError> {
        std::fs::create_dir_all(dir)?;
        for (name, text) in self.files() {
            std::fs::write(dir.join(name), text)?;
        }
        if let Some(t) = &self.timings {
            std::fs::write(dir.join("timings.csv"), t)?;
        }
        Ok(())
    }
}

/// Runs the configured command in a pool of `config.threads` workers
/// (0 or unset: one per core).
pub fn execute(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
        .map_err(|e| HarnessError::Usage(format!("`threads`: {e}")))?;
    pool.install(|| execute_in_current_pool(config))
}

/// [`execute`], then write the outputs to `config.output` (default `liewords-out`).
pub fn run(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let out = execute(config)?;
    let dir = config
        .output
        .clone()
        .unwrap_or_else(|| std::path::PathBuf::from("liewords-out"));
    out.write_to(&dir)?;
    Ok(out)
}

pub(crate) fn csv_table<T: Serialize>(rows: &[T]) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| HarnessError::Io(std::io::Error::other(e.to_string())))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| HarnessError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
