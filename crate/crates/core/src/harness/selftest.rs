//! The oracle suite run by `liewords selftest` and by the acceptance tests.
//! Each criterion returns its checks; tolerances are pinned here.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::covering::{
    binomial_bound, circle_covering_radius, coefficient_vector_count, default_probes, enumerate_words,
    enumerate_words_with, exhaustive_abelian_count, net_certificate, net_check, plan_net_parameters, NetVerdict,
    WordLength, DEFAULT_DEDUP_TOL, WORD_SET_CAP,
};
use crate::group::{haar_sample, GroupDescriptor, Quaternion};
use crate::heat::{
    gaussian_bound_fit, heat_diagonal, heat_l2_tail, heat_norm_slope, heat_trace_fit, plan_truncation, spectral_tail,
};
use crate::irrep::{character, irrep_matrix};
use crate::numeric::{lin_grid, log_grid, unit_ball_volume, CompensatedSum};
use crate::seeds::{rng, substream_seed, trial_seed};
use crate::spectra::{enumerate_modes, su2_eigenvalue, torus_eigenvalue, weyl_constant, weyl_ratio, SpectralMode};
use crate::word_measure::{
    build_alphabet, chernoff_constant, chernoff_delta, spectral_gap, theorem1_check, word_fourier_power, Alphabet,
    OperatorValue,
};

use super::config::{Command, GroupKind};
use super::{Check, ExperimentConfig, HarnessError};

pub const CRITERIA: [&str; 12] = [
    "Fourier transform of the word measure vs exhaustive word enumeration",
    "irreducible representations: unitarity, homomorphism, characters",
    "heat norm exponent -n/4",
    "truncation tail vs majorant; formula vs adaptive cutoff",
    "Weyl law",
    "heat trace leading coefficient",
    "Gaussian upper bound constant",
    "matrix Chernoff concentration of the spectral gap",
    "L2 equidistribution of heat-smoothed words",
    "2r-net from the planned (k, l)",
    "abelian word counts and the volume obstruction",
    "determinism across thread counts",
];

/// Largest `k` in the exhaustive word oracle.
pub const ORACLE_MAX_K: usize = 8;
pub const ORACLE_MAX_WORDS: u64 = 100_000;
pub const TORUS_ORACLE_TOL: f64 = 1e-12;
pub const SU2_ORACLE_TOL: f64 = 1e-9;
pub const REPRESENTATION_TOL: f64 = 1e-10;
pub const CHARACTER_TOL: f64 = 1e-9;
pub const SLOPE_REL_TOL: f64 = 0.05;
pub const TRACE_REL_TOL: f64 = 0.02;
pub const GAUSSIAN_STABILITY_TOL: f64 = 0.10;
pub const WEYL_SU2_TOL: f64 = 0.02;
pub const WEYL_TORUS_TOL: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }
}

pub fn criterion(id: u8, seed: u64) -> Result<Criterion, HarnessError> {
    let title = CRITERIA
        .get(id as usize - 1)
        .copied()
        .ok_or_else(|| HarnessError::Usage(format!("no criterion {id}")))?;
    let mut notes = Vec::new();
    let checks = match id {
        1 => word_oracle(seed)?,
        2 => representations(seed),
        3 => [
            GroupDescriptor::Torus(1),
            GroupDescriptor::Torus(2),
            GroupDescriptor::Su2,
        ]
        .into_iter()
        .map(heat_slope_check)
        .collect::<Result<_, _>>()?,
        4 => {
            let mut v = Vec::new();
            for g in [
                GroupDescriptor::Torus(1),
                GroupDescriptor::Torus(2),
                GroupDescriptor::Su2,
            ] {
                v.extend(tail_majorant_checks(g)?);
                v.extend(plan_coverage_checks(g)?);
            }
            v
        }
        5 => vec![
            Check::relative(
                "SU(2): N(1e4)/1e4^(3/2) vs 1/3",
                weyl_ratio(GroupDescriptor::Su2, 1e4),
                weyl_constant(GroupDescriptor::Su2),
                WEYL_SU2_TOL,
            ),
            Check::relative(
                "T^2: N(1e5)/1e5 vs 1/(4 pi)",
                weyl_ratio(GroupDescriptor::Torus(2), 1e5),
                weyl_constant(GroupDescriptor::Torus(2)),
                WEYL_TORUS_TOL,
            ),
        ],
        6 => heat_trace_torus1()?,
        7 => {
            let mut v = gaussian_checks(GroupDescriptor::Torus(1))?;
            v.extend(gaussian_checks(GroupDescriptor::Su2)?);
            v
        }
        8 => chernoff(seed, &mut notes)?,
        9 => theorem1(seed, &mut notes)?,
        10 => nets(seed, &mut notes)?,
        11 => obstruction(seed)?,
        12 => determinism(seed)?,
        _ => unreachable!(),
    };
    Ok(Criterion {
        id,
        title,
        checks,
        notes,
    })
}

/// `(1/(2k)^ℓ) Σ_w π(w)` over all words, for every mode in `modes`.
pub fn exhaustive_word_averages(alphabet: &Alphabet, modes: &[SpectralMode], ell: usize) -> Vec<OperatorValue> {
    let letters = alphabet.letters();
    let mut acc: Vec<OperatorValue> = modes
        .iter()
        .map(|m| match alphabet.group {
            GroupDescriptor::Torus(_) => OperatorValue::Scalar(0.0),
            GroupDescriptor::Su2 => OperatorValue::Matrix(DMatrix::zeros(m.dim, m.dim)),
        })
        .collect();
    let mut scalar = vec![CompensatedSum::new(); modes.len()];
    let mut word = vec![0usize; ell];
    let total = (letters.len() as f64).powi(ell as i32);
    loop {
        match alphabet.group {
            GroupDescriptor::Torus(n) => {
                let mut x = vec![0.0; n];
                for &l in &word {
                    for (xi, gi) in x.iter_mut().zip(letters[l].coords()) {
                        *xi = (*xi + gi).rem_euclid(1.0);
                    }
                }
                for (s, m) in scalar.iter_mut().zip(modes) {
                    let phase: f64 = m.frequency().iter().zip(&x).map(|(&f, &xi)| f as f64 * xi).sum();
                    s.add((2.0 * PI * phase).cos());
                }
            }
            GroupDescriptor::Su2 => {
                let q = word.iter().fold(Quaternion::ONE, |q, &l| q * letters[l].quat());
                for (a, m) in acc.iter_mut().zip(modes) {
                    if let OperatorValue::Matrix(s) = a {
                        *s += irrep_matrix(m.level(), q);
                    }
                }
            }
        }
        let mut i = 0;
        loop {
            if i == ell {
                return acc
                    .into_iter()
                    .zip(&scalar)
                    .map(|(a, s)| match a {
                        OperatorValue::Scalar(_) => OperatorValue::Scalar(s.value() / total),
                        OperatorValue::Matrix(m) => OperatorValue::Matrix(m.unscale(total)),
                    })
                    .collect();
            }
            word[i] += 1;
            if word[i] < letters.len() {
                break;
            }
            word[i] = 0;
            i += 1;
        }
    }
}

fn word_oracle(seed: u64) -> Result<Vec<Check>, HarnessError> {
    let cases = [
        (GroupDescriptor::Torus(1), torus_eigenvalue(25), TORUS_ORACLE_TOL),
        (GroupDescriptor::Torus(2), torus_eigenvalue(8), TORUS_ORACLE_TOL),
        (GroupDescriptor::Su2, su2_eigenvalue(4), SU2_ORACLE_TOL),
    ];
    let mut checks = Vec::new();
    for (gi, (group, cutoff, tol)) in cases.into_iter().enumerate() {
        let modes = enumerate_modes(group, cutoff)?;
        let mut pairs = Vec::new();
        for k in 1..=ORACLE_MAX_K {
            let mut ell = 0;
            while (2 * k as u64).pow(ell as u32) <= ORACLE_MAX_WORDS {
                pairs.push((k, ell));
                ell += 1;
            }
        }
        let worst = pairs
            .par_iter()
            .map(|&(k, ell)| {
                let alphabet = build_alphabet(trial_seed(substream_seed(seed, gi as u64), k as u64), k, group);
                let brute = exhaustive_word_averages(&alphabet, &modes, ell);
                modes
                    .iter()
                    .zip(&brute)
                    .map(|(m, b)| word_fourier_power(&alphabet, m, ell).distance(b))
                    .fold(0.0, f64::max)
            })
            .collect::<Vec<f64>>()
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(Check::at_most(
            format!("{group}: max |A^l - word average| over {} (k, l) pairs", pairs.len()),
            worst,
            tol,
        ));
    }
    Ok(checks)
}

fn representations(seed: u64) -> Vec<Check> {
    let mut r = rng(seed);
    let g = GroupDescriptor::Su2;
    let (mut unitary, mut homo, mut chi) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..100 {
        let p = haar_sample(&mut r, g);
        let q = haar_sample(&mut r, g);
        let pq = p.multiply(&q);
        for level in 0..=6 {
            let a = irrep_matrix(level, p.quat());
            let b = irrep_matrix(level, q.quat());
            let ab = irrep_matrix(level, pq.quat());
            let id = DMatrix::<Complex64>::identity(level + 1, level + 1);
            unitary = unitary.max((&a * a.adjoint() - id).norm());
            homo = homo.max((ab - &a * &b).norm());
            chi = chi.max((a.trace().re - character(level, p.angle())).abs() + a.trace().im.abs());
        }
    }
    vec![
        Check::at_most("max ||pi pi^* - I||_F, levels <= 6", unitary, REPRESENTATION_TOL),
        Check::at_most("max ||pi(pq) - pi(p)pi(q)||_F, levels <= 6", homo, REPRESENTATION_TOL),
        Check::at_most("max |tr pi - chi|", chi, CHARACTER_TOL),
    ]
}

/// Slope of `log ‖H_t‖₂` on `t ∈ [1e−3, 1e−1]` against `−n/4`.
pub fn heat_slope_check(group: GroupDescriptor) -> Result<Check, HarnessError> {
    let slope = heat_norm_slope(group, &log_grid(1e-3, 1e-1, 21))?;
    let target = -(group.dim() as f64) / 4.0;
    Ok(Check::relative(
        format!("{group}: slope of log ||H_t|| on [1e-3, 1e-1]"),
        slope,
        target,
        SLOPE_REL_TOL,
    ))
}

/// Fitted `a₀` of `t^{n/2} H(e, e, t)` against `(4π)^{−n/2}`.
pub fn heat_trace_check(group: GroupDescriptor) -> Result<Check, HarnessError> {
    let fit = heat_trace_fit(group, &crate::constants::default_trace_times())?;
    let target = (4.0 * PI).powf(-(group.dim() as f64) / 2.0);
    Ok(Check::relative(
        format!("{group}: heat trace a0"),
        fit.a0,
        target,
        TRACE_REL_TOL,
    ))
}

fn heat_trace_torus1() -> Result<Vec<Check>, HarnessError> {
    let g = GroupDescriptor::Torus(1);
    // Poisson-dual theta series: Σ_m e^{−4π²m²t} = (4πt)^{−1/2} Σ_j e^{−j²/(4t)}
    let mut worst = 0.0_f64;
    for t in log_grid(1e-4, 1e-1, 13) {
        let dual: f64 =
            (4.0 * PI * t).powf(-0.5) * (-30..=30).map(|j| (-((j * j) as f64) / (4.0 * t)).exp()).sum::<f64>();
        worst = worst.max((heat_diagonal(g, t)? / dual - 1.0).abs());
    }
    Ok(vec![
        Check::at_most(
            "T^1: heat diagonal vs Poisson-dual theta series (relative)",
            worst,
            1e-12,
        ),
        heat_trace_check(g)?,
    ])
}

/// Fitted `C₁` on a base grid and a refined grid over `t ∈ [1e−3, 1e−1]`.
pub fn gaussian_checks(group: GroupDescriptor) -> Result<Vec<Check>, HarnessError> {
    let d = group.diameter();
    let base = gaussian_bound_fit(group, &log_grid(1e-3, 1e-1, 9), &lin_grid(0.0, d, 41))?;
    let fine = gaussian_bound_fit(group, &log_grid(1e-3, 1e-1, 17), &lin_grid(0.0, d, 81))?;
    Ok(vec![
        Check::flag(
            format!("{group}: fitted C1 finite ({})", base.c1),
            base.c1.is_finite() && base.c1 > 0.0,
        ),
        Check::relative(
            format!("{group}: C1 under grid refinement"),
            fine.c1,
            base.c1,
            GAUSSIAN_STABILITY_TOL,
        ),
    ])
}

/// Exact `L²` tail against the majorant on a 20-point `(t, M)` grid.
pub fn tail_majorant_checks(group: GroupDescriptor) -> Result<Vec<Check>, HarnessError> {
    let mut worst = 0.0_f64;
    for t in [0.01, 0.03, 0.1, 0.3, 1.0] {
        for m in [10.0, 100.0, 1000.0, 10000.0] {
            let exact = heat_l2_tail(group, t, m)?;
            let major = spectral_tail(group, t, m)?;
            if exact > 0.0 {
                worst = worst.max(exact / major);
            }
        }
    }
    Ok(vec![Check::at_most(
        format!("{group}: max exact tail / majorant on 20 (t, M)"),
        worst,
        1.0,
    )])
}

/// The formula cutoff covers the adaptive one once `C_G` is at least the
/// constant fitted on one grid; verified on that grid and an interleaved one.
pub fn plan_coverage_checks(group: GroupDescriptor) -> Result<Vec<Check>, HarnessError> {
    let etas = [1e-2, 1e-4, 1e-6, 1e-8];
    let mut cg_fit = f64::NEG_INFINITY;
    for t in log_grid(1e-3, 1.0, 7) {
        for eta in etas {
            cg_fit = cg_fit.max(plan_truncation(group, t, eta, 1.0)?.cg_needed);
        }
    }
    let cg = cg_fit.max(0.0);
    let mut covered = 0;
    let mut total = 0;
    let mut covered_inter = 0;
    let mut total_inter = 0;
    for t in log_grid(1e-3, 1.0, 7) {
        for eta in etas {
            total += 1;
            covered += plan_truncation(group, t, eta, cg)?.formula_covers_adaptive as usize;
        }
    }
    for t in log_grid(1.8e-3, 0.6, 6) {
        for eta in [1e-3, 1e-5, 1e-7] {
            total_inter += 1;
            covered_inter += plan_truncation(group, t, eta, cg)?.formula_covers_adaptive as usize;
        }
    }
    Ok(vec![
        Check::at_least(
            format!("{group}: formula M >= adaptive M at fitted CG = {cg:.4} (fit grid)"),
            covered as f64,
            total as f64,
        ),
        Check::at_least(
            format!("{group}: same on interleaved grid"),
            covered_inter as f64,
            total_inter as f64,
        )
        .informational(),
    ])
}

fn chernoff(seed: u64, notes: &mut Vec<String>) -> Result<Vec<Check>, HarnessError> {
    let g = GroupDescriptor::Su2;
    let cutoff = su2_eigenvalue(5);
    let trials = 500u64;
    let mut checks = Vec::new();
    let mut rates_3q = Vec::new();
    let mut rates_half = Vec::new();
    for (j, k) in [8usize, 16, 32].into_iter().enumerate() {
        let stream = substream_seed(seed, 800 + j as u64);
        let gaps = (0..trials)
            .into_par_iter()
            .map(|i| Ok(spectral_gap(&build_alphabet(trial_seed(stream, i), k, g), cutoff)?.gap))
            .collect::<Result<Vec<f64>, crate::Error>>()?;
        let r3 = gaps.iter().filter(|&&x| x > 0.75).count() as f64 / trials as f64;
        let rh = gaps.iter().filter(|&&x| x > 0.5).count() as f64 / trials as f64;
        let bound = chernoff_delta(k, cutoff, g, chernoff_constant(g)).aw_exact.min(1.0);
        checks.push(Check::at_most(
            format!("k = {k}: P[gap > 3/4] <= min(1, 2D e^(-k/(16 ln 2)))"),
            r3,
            bound,
        ));
        checks.push(Check::at_most(
            format!("k = {k}: P[gap > 1/2] <= min(1, 2D e^(-k/(16 ln 2)))"),
            rh,
            bound,
        ));
        rates_3q.push(r3);
        rates_half.push(rh);
    }
    let nonincreasing = rates_3q.windows(2).all(|w| w[1] <= w[0]);
    checks.push(Check::flag(
        format!("P[gap > 3/4] nonincreasing in k: {rates_3q:?}"),
        nonincreasing,
    ));
    checks.push(Check::at_most(
        format!("P[gap > 1/2] at k = 32 below k = 8: {rates_half:?}"),
        rates_half[2],
        rates_half[0] - f64::EPSILON,
    ));
    if rates_3q.iter().all(|&r| r == 0.0) {
        notes.push("no trial exceeded 3/4 at any k, so that rate cannot decrease strictly; the 1/2 event carries the strict decrease".into());
    }
    Ok(checks)
}

fn theorem1(seed: u64, notes: &mut Vec<String>) -> Result<Vec<Check>, HarnessError> {
    let g = GroupDescriptor::Su2;
    let (k, t, ell): (usize, f64, usize) = (64, 0.05, 20);
    let eta = 0.5f64.powi(ell as i32) * t.powf(-0.75);
    let rep = theorem1_check(g, k, t, ell, eta, 100, substream_seed(seed, 900), 1.0)?;
    let mut checks = vec![Check::flag("parameters inside the window (CG = 1)", rep.hypothesis_met)];
    if rep.vacuous {
        notes.push(format!(
            "delta at fitted CG = {:.3} is >= 1: the probability claim is vacuous and not counted",
            rep.delta_fitted
        ));
        let mut c = Check::at_least(
            "fraction with discrepancy <= 2 eta vs 1 - delta (vacuous)",
            rep.fraction,
            1.0 - rep.delta_fitted,
        );
        c.holds = true;
        checks.push(c);
    } else {
        checks.push(Check::at_least(
            "fraction with discrepancy <= 2 eta vs 1 - delta",
            rep.fraction,
            1.0 - rep.delta_fitted,
        ));
    }
    checks.push(Check::at_least(
        "fraction with discrepancy <= 2 eta over 100 trials",
        rep.fraction,
        1.0,
    ));
    Ok(checks)
}

fn nets(seed: u64, notes: &mut Vec<String>) -> Result<Vec<Check>, HarnessError> {
    let mut checks = Vec::new();
    for (j, (n, r, delta)) in [(1usize, 0.05, 0.2), (2usize, 0.1, 0.2)].into_iter().enumerate() {
        let g = GroupDescriptor::Torus(n);
        let plan = plan_net_parameters(n, r, delta, 1.0)?;
        let probes = default_probes(g, r);
        let stream = substream_seed(seed, 1000 + j as u64);
        let outcomes = (0..50u64)
            .into_par_iter()
            .map(|i| {
                let s = trial_seed(stream, i);
                let a = build_alphabet(s, plan.k_min as usize, g);
                let cert = net_certificate(&a, r, plan.ell_min as usize, probes, substream_seed(s, 1))?;
                let oracle = if n == 1 && cert.verdict != NetVerdict::Inconclusive {
                    let words = enumerate_words(&a, cert.ell_used, DEFAULT_DEDUP_TOL)?;
                    let xs: Vec<f64> = words.points().iter().map(|p| p.coords()[0]).collect();
                    let c = cert.cover.expect("decided certificates carry a cover");
                    Some((c.radius - circle_covering_radius(&xs)).abs() - c.mesh)
                } else {
                    None
                };
                Ok((cert.verdict, cert.ell_used, oracle))
            })
            .collect::<Result<Vec<_>, crate::Error>>()?;
        let nets = outcomes.iter().filter(|o| o.0 == NetVerdict::Net).count();
        let max_ell = outcomes.iter().map(|o| o.1).max().unwrap_or(0);
        notes.push(format!(
            "T^{n}, r = {r}: plan eps = {:.5}, k = {}, l = {}; nets certified by words of length <= {max_ell}",
            plan.epsilon, plan.k_min, plan.ell_min
        ));
        checks.push(Check::at_least(
            format!("T^{n}, r = {r}: fraction of 50 trials that are 2r-nets"),
            nets as f64 / 50.0,
            0.8,
        ));
        if n == 1 {
            let worst = outcomes.iter().filter_map(|o| o.2).fold(f64::NEG_INFINITY, f64::max);
            checks.push(Check::at_most(
                "T^1: |probe radius - sorted-gap radius| - mesh",
                worst,
                0.0,
            ));
        }
    }
    Ok(checks)
}

/// Spot points on `T²` where `C(m−1, ℓ)(2r)² π` is well below 1.
pub const OBSTRUCTION_SPOTS: [(usize, usize, f64); 3] = [(2, 2, 0.05), (3, 3, 0.02), (4, 2, 0.03)];

fn obstruction(seed: u64) -> Result<Vec<Check>, HarnessError> {
    let mut worst_excess = f64::NEG_INFINITY;
    let mut mismatch = 0.0_f64;
    for k in 1..=6usize {
        for ell in 0..=6usize {
            let brute = exhaustive_abelian_count(k, ell)? as f64;
            worst_excess = worst_excess.max(brute - binomial_bound(k, ell) as f64);
            mismatch = mismatch.max((brute - coefficient_vector_count(k, ell, WordLength::Exactly) as f64).abs());
        }
    }
    let mut checks = vec![
        Check::at_most(
            "max over k, l <= 6 of (exhaustive count - C(2k+l-1, l))",
            worst_excess,
            0.0,
        ),
        Check::at_most("max |exhaustive count - coefficient-vector count|", mismatch, 0.0),
    ];
    let g = GroupDescriptor::Torus(2);
    for (j, (k, ell, r)) in OBSTRUCTION_SPOTS.into_iter().enumerate() {
        let volume = binomial_bound(k, ell) as f64 * (2.0 * r) * (2.0 * r) * unit_ball_volume(2);
        let stream = substream_seed(seed, 1100 + j as u64);
        let probes = default_probes(g, r);
        let nets = (0..20u64)
            .into_par_iter()
            .map(|i| {
                let s = trial_seed(stream, i);
                let a = build_alphabet(s, k, g);
                let w = enumerate_words_with(&a, ell, DEFAULT_DEDUP_TOL, WordLength::Exactly, WORD_SET_CAP)?;
                Ok(net_check(&w, r, probes, substream_seed(s, 1)))
            })
            .collect::<Result<Vec<bool>, crate::Error>>()?;
        checks.push(Check::at_most(
            format!("k = {k}, l = {l}, r = {r}: C(m-1,l)(2r)^2 pi", l = ell),
            volume,
            1.0,
        ));
        checks.push(Check::at_most(
            format!("k = {k}, l = {ell}, r = {r}: seeds (of 20) where A^l is a 2r-net"),
            nets.iter().filter(|&&b| b).count() as f64,
            0.0,
        ));
    }
    Ok(checks)
}

/// Configs exercised by the determinism criterion.
pub fn determinism_configs(seed: u64) -> Vec<ExperimentConfig> {
    let base = ExperimentConfig {
        master_seed: Some(seed),
        gnuplot: Some(true),
        ..Default::default()
    };
    vec![
        ExperimentConfig {
            command: Some(Command::Gap),
            group: Some(GroupKind::Su2),
            k: Some(8),
            trials: Some(40),
            ..base.clone()
        },
        ExperimentConfig {
            command: Some(Command::Discrepancy),
            group: Some(GroupKind::Torus),
            n: Some(2),
            k: Some(8),
            t: Some(0.05),
            ell: Some(6),
            ell_max: Some(10),
            trials: Some(12),
            ..base.clone()
        },
        ExperimentConfig {
            command: Some(Command::Cover),
            group: Some(GroupKind::Torus),
            n: Some(1),
            r: Some(0.05),
            delta: Some(0.2),
            trials: Some(12),
            ..base.clone()
        },
        ExperimentConfig {
            command: Some(Command::Cover),
            group: Some(GroupKind::Su2),
            r: Some(0.3),
            delta: Some(0.2),
            k: Some(6),
            ell: Some(3),
            trials: Some(4),
            ..base
        },
    ]
}

fn determinism(seed: u64) -> Result<Vec<Check>, HarnessError> {
    let mut checks = Vec::new();
    for cfg in determinism_configs(seed) {
        let outputs = [1usize, 4, 8]
            .into_iter()
            .map(|threads| {
                super::execute(&ExperimentConfig {
                    threads: Some(threads),
                    ..cfg.clone()
                })
                .map(|o| o.files())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let same = outputs.windows(2).all(|w| w[0] == w[1]);
        checks.push(Check::flag(
            format!(
                "{} ({}): identical files for threads 1, 4, 8",
                cfg.command.expect("set"),
                cfg.group
                    .map_or("", |g| if g == GroupKind::Su2 { "su2" } else { "torus" })
            ),
            same,
        ));
    }
    Ok(checks)
}
