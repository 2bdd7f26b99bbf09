//! Random alphabets and the Fourier side of the word measure `μ_A^ℓ`.
//!
//! For each mode the one-step measure (uniform on `g_i^{±1}`) has Fourier
//! transform `Â = (1/2k) Σ_i (π(g_i) + π(g_i)†)`: a real scalar on the
//! torus, a Hermitian `(k+1)×(k+1)` matrix on SU(2) level `k`. The word
//! measure of length `ℓ` has transform `Â^ℓ`, which is what everything
//! below computes with. The lazy operator `P = (I + Â)/2` only enters
//! through the concentration event `‖Â‖ ≤ ε`.

use std::f64::consts::{LN_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{haar_sample, GroupDescriptor, GroupPoint};
use crate::heat::{heat_l2_tail, plan_truncation, TruncationPlans};
use crate::irrep::irrep_matrix;
use crate::numeric::CompensatedSum;
use crate::seeds::{rng, trial_seed};
use crate::spectra::{counting_function, enumerate_modes, shells, SpectralMode};

/// `k` generators; their inverses are implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alphabet {
    pub group: GroupDescriptor,
    pub gens: Vec<GroupPoint>,
    pub seed: Option<u64>,
}

impl Alphabet {
    pub fn from_generators(group: GroupDescriptor, gens: Vec<GroupPoint>) -> Self {
        assert!(!gens.is_empty(), "alphabet needs at least one generator");
        assert!(gens.iter().all(|g| g.group() == group), "generator from another group");
        Self {
            group,
            gens,
            seed: None,
        }
    }

    pub fn k(&self) -> usize {
        self.gens.len()
    }

    /// The `2k` letters `g_1, g_1^{-1}, …, g_k, g_k^{-1}`.
    pub fn letters(&self) -> Vec<GroupPoint> {
        self.gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect()
    }

    /// Replace every generator `g` by `h g h⁻¹`.
    pub fn conjugated(&self, h: &GroupPoint) -> Self {
        let hi = h.inverse();
        Self {
            group: self.group,
            gens: self.gens.iter().map(|g| h.multiply(g).multiply(&hi)).collect(),
            seed: self.seed,
        }
    }
}

/// `k` independent Haar samples from a generator seeded with `seed`.
pub fn build_alphabet(seed: u64, k: usize, group: GroupDescriptor) -> Alphabet {
    assert!(k >= 1, "alphabet needs k ≥ 1");
    let mut r = rng(seed);
    let gens = (0..k).map(|_| haar_sample(&mut r, group)).collect();
    Alphabet {
        group,
        gens,
        seed: Some(seed),
    }
}

/// Scalar (torus) or Hermitian matrix (SU(2)) Fourier coefficient.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorValue {
    Scalar(f64),
    Matrix(DMatrix<Complex64>),
}

impl OperatorValue {
    pub fn identity_like(&self) -> OperatorValue {
        match self {
            OperatorValue::Scalar(_) => OperatorValue::Scalar(1.0),
            OperatorValue::Matrix(m) => OperatorValue::Matrix(DMatrix::identity(m.nrows(), m.ncols())),
        }
    }

    /// Operator norm: `|a|`, or the largest `|eigenvalue|` of the Hermitian part.
    pub fn norm(&self) -> f64 {
        match self {
            OperatorValue::Scalar(a) => a.abs(),
            OperatorValue::Matrix(m) => hermitian_norm(m),
        }
    }

    pub fn frobenius_sq(&self) -> f64 {
        match self {
            OperatorValue::Scalar(a) => a * a,
            OperatorValue::Matrix(m) => m.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// `‖A − A†‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        match self {
            OperatorValue::Scalar(_) => 0.0,
            OperatorValue::Matrix(m) => (m - m.adjoint()).norm(),
        }
    }

    pub fn mul(&self, other: &OperatorValue) -> OperatorValue {
        match (self, other) {
            (OperatorValue::Scalar(a), OperatorValue::Scalar(b)) => OperatorValue::Scalar(a * b),
            (OperatorValue::Matrix(a), OperatorValue::Matrix(b)) => OperatorValue::Matrix(a * b),
            _ => panic!("operator kinds differ"),
        }
    }

    /// `self^ell` by repeated multiplication.
    pub fn pow(&self, ell: usize) -> OperatorValue {
        let mut acc = self.identity_like();
        for _ in 0..ell {
            acc = acc.mul(self);
        }
        acc
    }

    /// Distance to another value: absolute difference or Frobenius norm.
    pub fn distance(&self, other: &OperatorValue) -> f64 {
        match (self, other) {
            (OperatorValue::Scalar(a), OperatorValue::Scalar(b)) => (a - b).abs(),
            (OperatorValue::Matrix(a), OperatorValue::Matrix(b)) => (a - b).norm(),
            _ => panic!("operator kinds differ"),
        }
    }
}

fn hermitian_norm(m: &DMatrix<Complex64>) -> f64 {
    let h = (m + m.adjoint()).scale(0.5);
    h.symmetric_eigenvalues()
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// The averaging operator restricted to one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragingOperator {
    pub mode: SpectralMode,
    pub value: OperatorValue,
}

impl AveragingOperator {
    /// Lazy version `(I + Â)/2`.
    pub fn lazy(&self) -> OperatorValue {
        match &self.value {
            OperatorValue::Scalar(a) => OperatorValue::Scalar(0.5 * (1.0 + a)),
            OperatorValue::Matrix(m) => {
                let id = DMatrix::<Complex64>::identity(m.nrows(), m.ncols());
                OperatorValue::Matrix((id + m).scale(0.5))
            }
        }
    }
}

/// One-letter Fourier coefficient `π(g)` of a single group element.
pub fn fourier_of_point(g: &GroupPoint, mode: &SpectralMode) -> OperatorValue {
    match g {
        GroupPoint::Torus(x) => {
            // e^{−2πi m·x}; callers combine g with g⁻¹ so only the real part survives
            let phase: f64 = mode.frequency().iter().zip(x).map(|(&m, &xi)| m as f64 * xi).sum();
            OperatorValue::Scalar((2.0 * PI * phase).cos())
        }
        GroupPoint::Su2(q) => OperatorValue::Matrix(irrep_matrix(mode.level(), *q)),
    }
}

pub fn averaging_operator(alphabet: &Alphabet, mode: &SpectralMode) -> AveragingOperator {
    let k = alphabet.k() as f64;
    let value = match alphabet.group {
        GroupDescriptor::Torus(_) => {
            let s: CompensatedSum = alphabet
                .gens
                .iter()
                .map(|g| match fourier_of_point(g, mode) {
                    OperatorValue::Scalar(c) => c,
                    OperatorValue::Matrix(_) => unreachable!(),
                })
                .collect();
            OperatorValue::Scalar(s.value() / k)
        }
        GroupDescriptor::Su2 => {
            let d = mode.dim;
            let mut acc = DMatrix::<Complex64>::zeros(d, d);
            for g in &alphabet.gens {
                let p = irrep_matrix(mode.level(), g.quat());
                acc += &p + p.adjoint();
            }
            OperatorValue::Matrix(acc.scale(1.0 / (2.0 * k)))
        }
    };
    AveragingOperator {
        mode: mode.clone(),
        value,
    }
}

/// Fourier transform of `μ_A^ℓ` at a mode: `Â^ℓ`.
pub fn word_fourier_power(alphabet: &Alphabet, mode: &SpectralMode, ell: usize) -> OperatorValue {
    averaging_operator(alphabet, mode).value.pow(ell)
}

/// Largest nontrivial per-mode norm of `Â` with `0 < λ ≤ M`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub gap: f64,
    pub per_mode: Vec<(SpectralMode, f64)>,
}

pub fn spectral_gap(alphabet: &Alphabet, cutoff: f64) -> Result<GapReport> {
    let modes = enumerate_modes(alphabet.group, cutoff)?;
    let per_mode: Vec<(SpectralMode, f64)> = modes
        .into_iter()
        .filter(|m| !m.is_trivial())
        .map(|m| {
            let norm = averaging_operator(alphabet, &m).value.norm();
            (m, norm)
        })
        .collect();
    let gap = per_mode.iter().map(|(_, v)| *v).fold(0.0, f64::max);
    Ok(GapReport { gap, per_mode })
}

/// Both forms of the failure probability for the event `‖Â‖ ≤ 1/2` on `F̃_M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChernoffBound {
    /// `C_G M^{n/2} exp(−k/(16 ln 2))`.
    pub formula: f64,
    /// `2D exp(−ε²μk/(2 ln 2))` with `ε = μ = 1/2` and `D = dim F̃_M`.
    pub aw_exact: f64,
    pub dimension: u64,
}

pub const CHERNOFF_EPS: f64 = 0.5;
pub const CHERNOFF_MU: f64 = 0.5;

pub fn chernoff_delta(k: usize, cutoff: f64, group: GroupDescriptor, cg: f64) -> ChernoffBound {
    assert!(k >= 1 && cutoff > 0.0);
    let n = group.dim() as f64;
    let kf = k as f64;
    let dimension = counting_function(group, cutoff) - 1;
    ChernoffBound {
        formula: cg * cutoff.powf(n / 2.0) * (-kf / (16.0 * LN_2)).exp(),
        aw_exact: 2.0 * dimension as f64 * (-CHERNOFF_EPS * CHERNOFF_EPS * CHERNOFF_MU * kf / (2.0 * LN_2)).exp(),
        dimension,
    }
}

/// `sup_M 2 dim F̃_M / M^{n/2}` over the first few hundred nonzero eigenvalues:
/// the constant that turns the exact dimension count into `C_G M^{n/2}`.
pub fn chernoff_constant(group: GroupDescriptor) -> f64 {
    let n = group.dim() as f64;
    let mut dim = 0u64;
    let mut best = 0.0_f64;
    for shell in shells(group).skip(1).take(400) {
        dim += shell.multiplicity;
        best = best.max(2.0 * dim as f64 / shell.eigenvalue.powf(n / 2.0));
    }
    best
}

/// `‖1/vol − μ_A^ℓ * H_t‖₂` on the truncated spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub t: f64,
    pub ell: usize,
    /// Value on modes `0 < λ ≤ M`.
    pub value: f64,
    /// Upper bound on the contribution of the dropped modes, `‖H_t − H_{t,M}‖₂`.
    pub error_bar: f64,
    pub eta_acc: f64,
    pub cutoff: f64,
    /// `sup_{0<λ≤M} ‖Â‖`.
    pub gap: f64,
    /// `‖H̃_{t,M}‖₂`.
    pub smoothed_norm: f64,
}

/// Discrepancy for every word length `0..=ell_max`, sharing one truncation.
pub fn discrepancy_sweep(alphabet: &Alphabet, t: f64, ell_max: usize, eta_acc: f64) -> Result<Vec<DiscrepancyReport>> {
    let group = alphabet.group;
    let plans: TruncationPlans = plan_truncation(group, t, eta_acc, 1.0)?;
    let cutoff = plans.adaptive.cutoff;
    let error_bar = heat_l2_tail(group, t, cutoff)?;
    let modes = enumerate_modes(group, cutoff)?;
    let vol = group.vol();

    let mut sums = vec![CompensatedSum::new(); ell_max + 1];
    let mut smoothed = CompensatedSum::new();
    let mut gap = 0.0_f64;
    for mode in modes.iter().filter(|m| !m.is_trivial()) {
        let op = averaging_operator(alphabet, mode).value;
        gap = gap.max(op.norm());
        let weight = mode.copies() as f64 / vol * (-2.0 * mode.eigenvalue * t).exp();
        smoothed.add(weight * mode.dim as f64);
        let mut power = op.identity_like();
        for sum in sums.iter_mut() {
            sum.add(weight * power.frobenius_sq());
            power = power.mul(&op);
        }
    }
    Ok(sums
        .iter()
        .enumerate()
        .map(|(ell, s)| DiscrepancyReport {
            t,
            ell,
            value: s.value().max(0.0).sqrt(),
            error_bar,
            eta_acc,
            cutoff,
            gap,
            smoothed_norm: smoothed.value().sqrt(),
        })
        .collect())
}

pub fn discrepancy(alphabet: &Alphabet, t: f64, ell: usize, eta_acc: f64) -> Result<DiscrepancyReport> {
    Ok(discrepancy_sweep(alphabet, t, ell, eta_acc)?
        .pop()
        .expect("sweep is nonempty"))
}

/// One seeded alphabet in a theorem check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Trial {
    pub trial_index: u64,
    pub seed: u64,
    pub discrepancy: f64,
    pub error_bar: f64,
    pub gap: f64,
    /// `2η`.
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub group: GroupDescriptor,
    pub k: usize,
    pub t: f64,
    pub ell: usize,
    pub eta: f64,
    pub cg: f64,
    /// `2^{−ℓ} t^{−n/4}`.
    pub window_lower: f64,
    /// `2^{−C_G} t^{n/2}`.
    pub window_upper: f64,
    pub hypothesis_met: bool,
    /// Largest `C_G` for which the window is nonempty.
    pub cg_window_max: f64,
    /// `(C_G/η) exp(−k/(16 ln 2))` with the configured `C_G`.
    pub delta: f64,
    /// Same with the fitted Chernoff constant.
    pub delta_fitted: f64,
    pub cg_fitted: f64,
    /// `δ ≥ 1` at the fitted constant: nothing to check.
    pub vacuous: bool,
    pub successes: usize,
    pub fraction: f64,
    /// `fraction ≥ 1 − δ_fitted`; true when vacuous.
    pub holds: bool,
    pub trials: Vec<Theorem1Trial>,
}

/// Relative truncation accuracy used inside the theorem check.
pub const THEOREM1_ETA_ACC_FACTOR: f64 = 1e-2;

#[allow(clippy::too_many_arguments)]
pub fn theorem1_check(
    group: GroupDescriptor,
    k: usize,
    t: f64,
    ell: usize,
    eta: f64,
    trials: usize,
    master_seed: u64,
    cg: f64,
) -> Result<Theorem1Report> {
    let n = group.dim() as f64;
    let window_lower = 0.5f64.powi(ell as i32) * t.powf(-n / 4.0);
    let window_upper = 2f64.powf(-cg) * t.powf(n / 2.0);
    let hypothesis_met = window_lower <= eta && eta <= window_upper;
    let cg_window_max = ell as f64 - (3.0 * n / 4.0) * (1.0 / t).log2();
    let decay = (-(k as f64) / (16.0 * LN_2)).exp();
    let cg_fitted = chernoff_constant(group);
    let delta = cg / eta * decay;
    let delta_fitted = cg_fitted / eta * decay;
    let eta_acc = eta * THEOREM1_ETA_ACC_FACTOR;

    let results: Vec<Result<Theorem1Trial>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(master_seed, i);
            let alphabet = build_alphabet(seed, k, group);
            let rep = discrepancy(&alphabet, t, ell, eta_acc)?;
            let bound = 2.0 * eta;
            Ok(Theorem1Trial {
                trial_index: i,
                seed,
                discrepancy: rep.value,
                error_bar: rep.error_bar,
                gap: rep.gap,
                bound,
                holds: rep.value + rep.error_bar <= bound,
            })
        })
        .collect();
    let trials_out = results.into_iter().collect::<Result<Vec<_>>>()?;
    let successes = trials_out.iter().filter(|t| t.holds).count();
    let fraction = if trials_out.is_empty() {
        0.0
    } else {
        successes as f64 / trials_out.len() as f64
    };
    let vacuous = delta_fitted >= 1.0;
    Ok(Theorem1Report {
        group,
        k,
        t,
        ell,
        eta,
        cg,
        window_lower,
        window_upper,
        hypothesis_met,
        cg_window_max,
        delta,
        delta_fitted,
        cg_fitted,
        vacuous,
        successes,
        fraction,
        holds: vacuous || fraction >= 1.0 - delta_fitted,
        trials: trials_out,
    })
}
