use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::covering::{
    abelian_lower_bounds, circle_covering_radius, default_probes, enumerate_words, exhaustive_abelian_count,
    lower_bounds_for_m, net_certificate, plan_net_parameters, NetVerdict, DEFAULT_DEDUP_TOL,
};
use crate::group::GroupDescriptor;
use crate::heat::{heat_diagonal, heat_l2_norm};
use crate::numeric::log_grid;
use crate::seeds::{substream_seed, trial_seed, RNG_ALGORITHM};
use crate::spectra::{
    counting_function, enumerate_modes, su2_eigenvalue, torus_eigenvalue, verify_donnelly, weyl_constant, weyl_ratio,
};
use crate::word_measure::{
    build_alphabet, chernoff_constant, chernoff_delta, discrepancy_sweep, spectral_gap, theorem1_check,
    THEOREM1_ETA_ACC_FACTOR,
};

use super::config::{at_least_one, in_open_unit, positive, usage, Command, ExperimentConfig, GroupKind};
use super::selftest;
use super::{csv_table, Check, HarnessError, RunOutput, Summary, SEED_RULE};

/// Seed used by `selftest` when the config gives none.
pub const SELFTEST_SEED: u64 = 20_240_601;

struct Parts {
    group: Option<GroupDescriptor>,
    parameters: serde_json::Value,
    results: serde_json::Value,
    checks: Vec<Check>,
    tables: Vec<(String, String)>,
    gnuplot: Option<String>,
    timings: Vec<TrialTiming>,
}

#[derive(Serialize)]
struct TrialTiming {
    trial_index: u64,
    wall_time_s: f64,
}

/// Runs `config` on the current rayon pool.
pub fn execute_in_current_pool(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let command = config.command.ok_or_else(|| usage("command", "is required"))?;
    // only the randomized commands need a seed
    let seed = match command {
        Command::Gap | Command::Discrepancy | Command::Cover => Some(config.seed()?),
        Command::Selftest => Some(config.master_seed.unwrap_or(SELFTEST_SEED)),
        Command::Heat | Command::Weyl | Command::Lowerbound => config.master_seed,
    };
    let need = || seed.expect("randomized commands resolve a seed");
    let parts = match command {
        Command::Gap => gap(config, need())?,
        Command::Discrepancy => discrepancy(config, need())?,
        Command::Cover => cover(config, need())?,
        Command::Heat => heat(config)?,
        Command::Weyl => weyl(config)?,
        Command::Lowerbound => lowerbound(config)?,
        Command::Selftest => selftest_parts(need())?,
    };
    let passed = parts.checks.iter().all(|c| !c.failed());
    let timings = if config.timings.unwrap_or(false) && !parts.timings.is_empty() {
        Some(csv_table(&parts.timings)?)
    } else {
        None
    };
    Ok(RunOutput {
        summary: Summary {
            command,
            group: parts.group.map(|g| g.to_string()),
            master_seed: seed,
            rng: RNG_ALGORITHM,
            seed_rule: SEED_RULE,
            parameters: parts.parameters,
            results: parts.results,
            checks: parts.checks,
            passed,
        },
        tables: parts.tables,
        gnuplot: if config.gnuplot.unwrap_or(false) {
            parts.gnuplot
        } else {
            None
        },
        timings,
    })
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64())
}

/// Cutoff covering SU(2) levels ≤ 5, or torus frequencies with `|m|² ≤ 25`.
pub fn default_gap_cutoff(group: GroupDescriptor) -> f64 {
    match group {
        GroupDescriptor::Su2 => su2_eigenvalue(5),
        GroupDescriptor::Torus(_) => torus_eigenvalue(25),
    }
}

#[derive(Serialize)]
struct GapRecord {
    trial_index: u64,
    seed: u64,
    gap: f64,
    paper_bound: f64,
    holds: bool,
    above_three_quarters: bool,
}

fn gap(config: &ExperimentConfig, master: u64) -> Result<Parts, HarnessError> {
    let group = config.group_descriptor(GroupKind::Su2)?;
    let k = at_least_one("k", config.k.unwrap_or(16))?;
    let trials = at_least_one("trials", config.trials.unwrap_or(200))?;
    let cutoff = positive("cutoff", config.cutoff.unwrap_or_else(|| default_gap_cutoff(group)))?;
    let cg = positive("cg", config.cg.unwrap_or(1.0))?;
    // fail early on oversized mode sets
    enumerate_modes(group, cutoff)?;

    let results: Vec<(Result<GapRecord, crate::Error>, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            timed(|| {
                let seed = trial_seed(master, i);
                let alphabet = build_alphabet(seed, k, group);
                let rep = spectral_gap(&alphabet, cutoff)?;
                Ok(GapRecord {
                    trial_index: i,
                    seed,
                    gap: rep.gap,
                    paper_bound: 0.5,
                    holds: rep.gap <= 0.5,
                    above_three_quarters: rep.gap > 0.75,
                })
            })
        })
        .collect();
    let mut rows = Vec::with_capacity(trials);
    let mut timings = Vec::with_capacity(trials);
    for (i, (r, dt)) in results.into_iter().enumerate() {
        rows.push(r?);
        timings.push(TrialTiming {
            trial_index: i as u64,
            wall_time_s: dt,
        });
    }
    let bound = chernoff_delta(k, cutoff, group, cg);
    let cg_fit = chernoff_constant(group);
    let bound_fit = chernoff_delta(k, cutoff, group, cg_fit);
    let rate_half = rows.iter().filter(|r| !r.holds).count() as f64 / trials as f64;
    let rate_3q = rows.iter().filter(|r| r.above_three_quarters).count() as f64 / trials as f64;
    let max_gap = rows.iter().map(|r| r.gap).fold(0.0, f64::max);
    let envelope = bound.aw_exact.min(1.0);
    let checks = vec![
        Check::at_most(
            "empirical P[gap > 1/2] <= min(1, 2D exp(-k/(16 ln 2)))",
            rate_half,
            envelope,
        ),
        Check::at_most(
            "empirical P[gap > 3/4] <= min(1, 2D exp(-k/(16 ln 2)))",
            rate_3q,
            envelope,
        ),
        Check::at_most("max gap <= 1", max_gap, 1.0 + 1e-12),
    ];
    Ok(Parts {
        group: Some(group),
        parameters: json!({ "k": k, "trials": trials, "cutoff": cutoff, "cg": cg }),
        results: json!({
            "delta_formula": bound.formula,
            "delta_formula_fitted_cg": bound_fit.formula,
            "cg_fitted": cg_fit,
            "delta_aw_exact": bound.aw_exact,
            "band_dimension": bound.dimension,
            "rate_gap_above_half": rate_half,
            "rate_gap_above_three_quarters": rate_3q,
            "max_gap": max_gap,
            "mean_gap": rows.iter().map(|r| r.gap).sum::<f64>() / trials as f64,
        }),
        checks,
        tables: vec![("trials.csv".into(), csv_table(&rows)?)],
        gnuplot: Some(
            "set datafile separator ','\nset xlabel 'gap'\nset ylabel 'trials'\nbin(x) = 0.02*floor(x/0.02)\n\
             plot 'trials.csv' every ::1 using (bin($3)):(1) smooth frequency with boxes title 'gap'\n"
                .into(),
        ),
        timings,
    })
}

#[derive(Serialize)]
struct DiscrepancyRecord {
    trial_index: u64,
    seed: u64,
    discrepancy: f64,
    error_bar: f64,
    gap: f64,
    measured: f64,
    paper_bound: f64,
    holds: bool,
}

#[derive(Serialize)]
struct SweepRecord {
    ell: usize,
    value: f64,
    error_bar: f64,
    measured: f64,
    paper_bound: f64,
    holds: bool,
}

fn discrepancy(config: &ExperimentConfig, master: u64) -> Result<Parts, HarnessError> {
    let group = config.group_descriptor(GroupKind::Su2)?;
    let n = group.dim() as f64;
    let k = at_least_one("k", config.k.unwrap_or(64))?;
    let t = positive("t", config.t.unwrap_or(0.05))?;
    let ell = config.ell.unwrap_or(20);
    let eta = positive(
        "eta",
        config.eta.unwrap_or_else(|| 0.5f64.powi(ell as i32) * t.powf(-n / 4.0)),
    )?;
    let trials = config.trials.unwrap_or(100);
    let ell_max = config.ell_max.unwrap_or(40);
    let cg = positive("cg", config.cg.unwrap_or(1.0))?;

    let (report, dt) = timed(|| theorem1_check(group, k, t, ell, eta, trials, master, cg));
    let report = report?;
    let rows: Vec<DiscrepancyRecord> = report
        .trials
        .iter()
        .map(|tr| DiscrepancyRecord {
            trial_index: tr.trial_index,
            seed: tr.seed,
            discrepancy: tr.discrepancy,
            error_bar: tr.error_bar,
            gap: tr.gap,
            measured: tr.discrepancy + tr.error_bar,
            paper_bound: tr.bound,
            holds: tr.holds,
        })
        .collect();

    let sweep_alphabet = build_alphabet(trial_seed(master, 0), k, group);
    let sweep = discrepancy_sweep(&sweep_alphabet, t, ell_max, eta * THEOREM1_ETA_ACC_FACTOR)?;
    let sweep_rows: Vec<SweepRecord> = sweep
        .iter()
        .map(|d| {
            let chain = d.gap.powi(d.ell as i32) * d.smoothed_norm * (1.0 + 1e-12) + d.error_bar;
            SweepRecord {
                ell: d.ell,
                value: d.value,
                error_bar: d.error_bar,
                measured: d.value,
                paper_bound: chain,
                holds: d.value <= chain,
            }
        })
        .collect();
    let monotone_violations = sweep
        .windows(2)
        .filter(|w| w[1].value > w[0].value * (1.0 + 1e-12))
        .count();
    let chain_violations = sweep_rows.iter().filter(|r| !r.holds).count();

    let mut checks = vec![
        Check::flag(
            "theorem window 2^-l t^(-n/4) <= eta <= 2^-CG t^(n/2)",
            report.hypothesis_met,
        )
        .informational(),
        Check::at_most(
            "sweep: discrepancy nonincreasing in l (violations)",
            monotone_violations as f64,
            0.0,
        ),
        Check::at_most(
            "sweep: discrepancy <= gap^l ||H~_t,M|| + tail (violations)",
            chain_violations as f64,
            0.0,
        ),
    ];
    let mut frac = Check::at_least(
        "fraction of trials with discrepancy <= 2 eta",
        report.fraction,
        1.0 - report.delta_fitted,
    );
    if report.vacuous {
        frac.holds = true;
        frac.name.push_str(" (delta >= 1: vacuous)");
    }
    checks.push(frac);
    if !report.hypothesis_met {
        // outside the window the theorem promises nothing
        checks.last_mut().expect("just pushed").asserted = false;
    }
    Ok(Parts {
        group: Some(group),
        parameters: json!({
            "k": k, "t": t, "ell": ell, "eta": eta, "trials": trials, "ell_max": ell_max, "cg": cg,
            "eta_acc": eta * THEOREM1_ETA_ACC_FACTOR,
        }),
        results: json!({
            "window_lower": report.window_lower,
            "window_upper": report.window_upper,
            "hypothesis_met": report.hypothesis_met,
            "cg_window_max": report.cg_window_max,
            "delta": report.delta,
            "delta_fitted": report.delta_fitted,
            "cg_fitted": report.cg_fitted,
            "vacuous": report.vacuous,
            "successes": report.successes,
            "fraction": report.fraction,
            "cutoff": sweep.first().map(|d| d.cutoff),
        }),
        checks,
        tables: vec![
            ("trials.csv".into(), csv_table(&rows)?),
            ("sweep.csv".into(), csv_table(&sweep_rows)?),
        ],
        gnuplot: Some(
            "set datafile separator ','\nset logscale y\nset xlabel 'word length'\nset ylabel 'L2 discrepancy'\n\
             plot 'sweep.csv' every ::1 using 1:2 with linespoints title 'discrepancy', \
             '' every ::1 using 1:5 with lines title 'gap^l bound'\n"
                .into(),
        ),
        timings: vec![TrialTiming {
            trial_index: 0,
            wall_time_s: dt,
        }],
    })
}

#[derive(Serialize)]
struct CoverRecord {
    trial_index: u64,
    seed: u64,
    verdict: NetVerdict,
    ell_used: usize,
    points: usize,
    radius: f64,
    mesh: f64,
    exact_radius: Option<f64>,
    paper_bound: f64,
    holds: bool,
}

fn cover(config: &ExperimentConfig, master: u64) -> Result<Parts, HarnessError> {
    let group = config.group_descriptor(GroupKind::Torus)?;
    let n = group.dim();
    let r = in_open_unit("r", config.r.unwrap_or(0.05))?;
    let delta = in_open_unit("delta", config.delta.unwrap_or(0.2))?;
    let cg = positive("cg", config.cg.unwrap_or(1.0))?;
    let plan = plan_net_parameters(n, r, delta, cg)?;
    let k = at_least_one("k", config.k.unwrap_or(plan.k_min as usize))?;
    let ell = config.ell.unwrap_or(plan.ell_min as usize);
    let trials = at_least_one("trials", config.trials.unwrap_or(50))?;
    let probes = at_least_one("probes", config.probes.unwrap_or_else(|| default_probes(group, r)))?;

    let results: Vec<(Result<CoverRecord, crate::Error>, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            timed(|| {
                let seed = trial_seed(master, i);
                let alphabet = build_alphabet(seed, k, group);
                let cert = net_certificate(&alphabet, r, ell, probes, substream_seed(seed, 1))?;
                let (radius, mesh) = cert.cover.map_or((f64::NAN, f64::NAN), |c| (c.radius, c.mesh));
                let exact_radius = match (group, cert.verdict) {
                    (GroupDescriptor::Torus(1), NetVerdict::Net | NetVerdict::NotNet) => {
                        let words = enumerate_words(&alphabet, cert.ell_used, DEFAULT_DEDUP_TOL)?;
                        let xs: Vec<f64> = words.points().iter().map(|p| p.coords()[0]).collect();
                        Some(circle_covering_radius(&xs))
                    }
                    _ => None,
                };
                Ok(CoverRecord {
                    trial_index: i,
                    seed,
                    verdict: cert.verdict,
                    ell_used: cert.ell_used,
                    points: cert.points,
                    radius,
                    mesh,
                    exact_radius,
                    paper_bound: 2.0 * r,
                    holds: cert.verdict == NetVerdict::Net,
                })
            })
        })
        .collect();
    let mut rows = Vec::with_capacity(trials);
    let mut timings = Vec::with_capacity(trials);
    for (i, (row, dt)) in results.into_iter().enumerate() {
        rows.push(row?);
        timings.push(TrialTiming {
            trial_index: i as u64,
            wall_time_s: dt,
        });
    }
    let nets = rows.iter().filter(|r| r.holds).count();
    let inconclusive = rows.iter().filter(|r| r.verdict == NetVerdict::Inconclusive).count();
    let fraction = nets as f64 / trials as f64;
    let mut checks = vec![Check::at_least(
        "fraction of trials where A^<=l is a 2r-net",
        fraction,
        1.0 - delta,
    )];
    if k < plan.k_min as usize || ell < plan.ell_min as usize {
        checks[0].asserted = false;
        checks[0].name.push_str(" (k or l below plan)");
    }
    let oracle_gap = rows
        .iter()
        .filter_map(|r| r.exact_radius.map(|e| (r.radius - e).abs() - r.mesh))
        .fold(f64::NEG_INFINITY, f64::max);
    if oracle_gap.is_finite() {
        checks.push(Check::at_most(
            "|probe radius - sorted-gap radius| - mesh",
            oracle_gap,
            0.0,
        ));
    }
    Ok(Parts {
        group: Some(group),
        parameters: json!({
            "r": r, "delta": delta, "cg": cg, "k": k, "ell": ell, "trials": trials, "probes": probes,
        }),
        results: json!({
            "plan": plan,
            "nets": nets,
            "inconclusive": inconclusive,
            "fraction": fraction,
        }),
        checks,
        tables: vec![("trials.csv".into(), csv_table(&rows)?)],
        gnuplot: Some(format!(
            "set datafile separator ','\nset xlabel 'trial'\nset ylabel 'covering radius'\n\
             plot 'trials.csv' every ::1 using 1:6 with points title 'radius', {} title '2r'\n",
            2.0 * r
        )),
        timings,
    })
}

#[derive(Serialize)]
struct HeatRecord {
    t: f64,
    l2_norm: f64,
    diagonal: f64,
    scaled_diagonal: f64,
    reference: f64,
}

fn heat(config: &ExperimentConfig) -> Result<Parts, HarnessError> {
    let group = config.group_descriptor(GroupKind::Su2)?;
    let n = group.dim() as f64;
    let t = positive("t", config.t.unwrap_or(0.05))?;
    let eta = positive("eta", config.eta.unwrap_or(1e-6))?;
    let cg = positive("cg", config.cg.unwrap_or(1.0))?;

    let grid = log_grid(1e-3, 1e-1, 21);
    let rows = grid
        .iter()
        .map(|&s| {
            let d = heat_diagonal(group, s)?;
            Ok(HeatRecord {
                t: s,
                l2_norm: heat_l2_norm(group, s)?,
                diagonal: d,
                scaled_diagonal: d * s.powf(n / 2.0),
                reference: s.powf(-n / 4.0),
            })
        })
        .collect::<Result<Vec<_>, crate::Error>>()?;

    let mut checks = vec![selftest::heat_slope_check(group)?, selftest::heat_trace_check(group)?];
    checks.extend(selftest::gaussian_checks(group)?);
    checks.extend(selftest::tail_majorant_checks(group)?);
    let plans = crate::heat::plan_truncation(group, t, eta, cg)?;
    let mut cover = Check::flag(
        "formula cutoff >= adaptive cutoff when CG >= CG needed",
        plans.formula_covers_adaptive,
    );
    if cg < plans.cg_needed {
        cover.asserted = false;
    }
    checks.push(cover);
    let donnelly = verify_donnelly(group, crate::heat::DONNELLY_REFERENCE_CUTOFF);
    Ok(Parts {
        group: Some(group),
        parameters: json!({ "t": t, "eta": eta, "cg": cg }),
        results: json!({ "plans": plans, "donnelly": donnelly }),
        checks,
        tables: vec![("heat.csv".into(), csv_table(&rows)?)],
        gnuplot: Some(
            "set datafile separator ','\nset logscale xy\nset xlabel 't'\n\
             plot 'heat.csv' every ::1 using 1:2 with linespoints title '||H_t||_2', \
             '' every ::1 using 1:5 with lines title 't^(-n/4)'\n"
                .into(),
        ),
        timings: Vec::new(),
    })
}

#[derive(Serialize)]
struct WeylRecord {
    lambda: f64,
    count: u64,
    ratio: f64,
    constant: f64,
    relative_error: f64,
}

fn weyl(config: &ExperimentConfig) -> Result<Parts, HarnessError> {
    let group = config.group_descriptor(GroupKind::Su2)?;
    let lambda = positive("lambda", config.lambda.unwrap_or(1e4))?;
    let constant = weyl_constant(group);
    let rows: Vec<WeylRecord> = (0..4)
        .map(|j| lambda / 10f64.powi(j))
        .map(|l| {
            let ratio = weyl_ratio(group, l);
            WeylRecord {
                lambda: l,
                count: counting_function(group, l),
                ratio,
                constant,
                relative_error: ratio / constant - 1.0,
            }
        })
        .collect();
    // the counting function against explicit mode enumeration, at a size that stays cheap
    let small = rows
        .iter()
        .map(|r| r.lambda)
        .filter(|&l| counting_function(group, l) <= 200_000)
        .fold(0.0, f64::max);
    let mut checks = Vec::new();
    if small > 0.0 {
        let listed: u64 = enumerate_modes(group, small)?.iter().map(|m| m.weight() as u64).sum();
        checks.push(Check::at_most(
            "N(lambda) - sum of mode dimensions (absolute)",
            (counting_function(group, small) as f64 - listed as f64).abs(),
            0.0,
        ));
    }
    let tol = match group {
        GroupDescriptor::Su2 => 0.02,
        GroupDescriptor::Torus(_) => 0.05,
    };
    checks
        .push(Check::relative("N(lambda)/lambda^(n/2) vs Weyl constant", rows[0].ratio, constant, tol).informational());
    Ok(Parts {
        group: Some(group),
        parameters: json!({ "lambda": lambda }),
        results: json!({ "ratio": rows[0].ratio, "constant": constant, "count": rows[0].count }),
        checks,
        tables: vec![("weyl.csv".into(), csv_table(&rows)?)],
        gnuplot: Some(
            "set datafile separator ','\nset logscale x\nset xlabel 'lambda'\n\
             plot 'weyl.csv' every ::1 using 1:3 with linespoints title 'N/lambda^(n/2)', \
             '' every ::1 using 1:4 with lines title 'Weyl constant'\n"
                .into(),
        ),
        timings: Vec::new(),
    })
}

fn lowerbound(config: &ExperimentConfig) -> Result<Parts, HarnessError> {
    if config.group == Some(GroupKind::Su2) {
        return Err(usage("group", "lowerbound applies to the torus"));
    }
    let n = config.n.unwrap_or(2);
    at_least_one("n", n)?;
    let r = config.r.unwrap_or(0.01);
    if !(r > 0.0 && r < 0.5) {
        return Err(usage("r", format!("must lie in (0, 1/2), got {r}")));
    }
    let mut checks = Vec::new();
    let report = match (config.k, config.ell, config.m) {
        (Some(k), Some(ell), m) => {
            let rep = abelian_lower_bounds(n, r, k as u64, ell as u64)?;
            if let Some(m) = m {
                if m != rep.m {
                    return Err(usage("m", format!("must equal 2k + l = {}", rep.m)));
                }
            }
            if let (Some(exact), Some(binom)) = (rep.exact_count, rep.binom_bound) {
                checks.push(Check::at_most(
                    "distinct length-l words <= C(2k+l-1, l)",
                    exact as f64,
                    binom as f64,
                ));
            }
            if (2.0 * k as f64).powi(ell as i32) <= 5e6 {
                let brute = exhaustive_abelian_count(k, ell)?;
                checks.push(Check::at_most(
                    "|exhaustive count - coefficient count|",
                    (brute as f64 - rep.exact_count.unwrap_or(0) as f64).abs(),
                    0.0,
                ));
            }
            rep
        }
        (None, None, Some(m)) => lower_bounds_for_m(n, r, m)?,
        _ => return Err(usage("m", "give either m, or both k and ell")),
    };
    Ok(Parts {
        group: Some(GroupDescriptor::Torus(n)),
        parameters: json!({ "n": n, "r": r, "k": config.k, "ell": config.ell, "m": report.m }),
        results: serde_json::to_value(report).expect("report serializes"),
        checks,
        tables: Vec::new(),
        gnuplot: None,
        timings: Vec::new(),
    })
}

#[derive(Serialize)]
struct CriterionRow {
    criterion: u8,
    title: &'static str,
    check: String,
    paper_bound: f64,
    measured: f64,
    holds: bool,
    asserted: bool,
}

fn selftest_parts(seed: u64) -> Result<Parts, HarnessError> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut per_criterion = Vec::new();
    for id in 1..=selftest::CRITERIA.len() as u8 {
        let c = selftest::criterion(id, seed)?;
        per_criterion.push(json!({ "criterion": id, "title": c.title, "passed": c.passed(), "notes": c.notes }));
        for ch in &c.checks {
            rows.push(CriterionRow {
                criterion: id,
                title: c.title,
                check: ch.name.clone(),
                paper_bound: ch.paper_bound,
                measured: ch.measured,
                holds: ch.holds,
                asserted: ch.asserted,
            });
            let mut ch = ch.clone();
            ch.name = format!("[{id}] {}", ch.name);
            checks.push(ch);
        }
    }
    Ok(Parts {
        group: None,
        parameters: json!({ "criteria": selftest::CRITERIA.len() }),
        results: json!({ "criteria": per_criterion }),
        checks,
        tables: vec![("selftest.csv".into(), csv_table(&rows)?)],
        gnuplot: None,
        timings: Vec::new(),
    })
}
