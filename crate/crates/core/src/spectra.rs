//! Laplacian spectra of the torus and SU(2): individual modes, eigenvalue
//! shells, Weyl counting, and sup-norm constants of eigenfunctions.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupDescriptor;
use crate::irrep::sym_power;
use crate::numeric::{lin_grid, unit_ball_volume};

/// Default cap on the number of enumerated modes.
pub const DEFAULT_MODE_CAP: usize = 2_000_000;

const EIGEN_RTOL: f64 = 1e-12;

/// Frequency vector on the torus, irrep level on SU(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeIndex {
    Frequency(Vec<i64>),
    Level(usize),
}

/// One Fourier / Peter–Weyl mode.
///
/// On the torus a mode is a single frequency `m` with `λ = 4π²|m|²` and
/// `dim = 1`. On SU(2) a mode is an irrep level `k` with `λ = k(k+2)` and
/// `dim = k+1`; its Laplacian eigenspace holds `k+1` copies of the irrep,
/// so the eigenspace dimension is `(k+1)²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMode {
    pub index: ModeIndex,
    pub eigenvalue: f64,
    pub dim: usize,
}

impl SpectralMode {
    pub fn is_trivial(&self) -> bool {
        match &self.index {
            ModeIndex::Frequency(m) => m.iter().all(|&c| c == 0),
            ModeIndex::Level(k) => *k == 0,
        }
    }

    /// Number of copies of this mode's representation inside its eigenspace
    /// contribution: 1 on the torus, `k+1` on SU(2).
    pub fn copies(&self) -> usize {
        match self.index {
            ModeIndex::Frequency(_) => 1,
            ModeIndex::Level(_) => self.dim,
        }
    }

    /// Dimension this mode contributes to `L²(G)`.
    pub fn weight(&self) -> usize {
        self.dim * self.copies()
    }

    pub fn level(&self) -> usize {
        match self.index {
            ModeIndex::Level(k) => k,
            ModeIndex::Frequency(_) => panic!("torus mode has no level"),
        }
    }

    pub fn frequency(&self) -> &[i64] {
        match &self.index {
            ModeIndex::Frequency(m) => m,
            ModeIndex::Level(_) => panic!("SU(2) mode has no frequency vector"),
        }
    }
}

pub fn torus_eigenvalue(norm_sq: u64) -> f64 {
    4.0 * PI * PI * norm_sq as f64
}

pub fn su2_eigenvalue(level: usize) -> f64 {
    (level * (level + 2)) as f64
}

fn within(lambda: f64, cutoff: f64) -> bool {
    lambda <= cutoff * (1.0 + EIGEN_RTOL)
}

/// Largest `|m|²` whose torus eigenvalue is within `cutoff`.
fn torus_norm_sq_max(cutoff: f64) -> u64 {
    let mut s = (cutoff / (4.0 * PI * PI)).floor().max(0.0) as u64;
    while within(torus_eigenvalue(s + 1), cutoff) {
        s += 1;
    }
    while s > 0 && !within(torus_eigenvalue(s), cutoff) {
        s -= 1;
    }
    s
}

fn su2_level_max(cutoff: f64) -> usize {
    let mut k = ((1.0 + cutoff.max(0.0)).sqrt() - 1.0).floor().max(0.0) as usize;
    while within(su2_eigenvalue(k + 1), cutoff) {
        k += 1;
    }
    while k > 0 && !within(su2_eigenvalue(k), cutoff) {
        k -= 1;
    }
    k
}

/// All modes with `λ ≤ cutoff`, ascending in `λ` (ties broken by index).
pub fn enumerate_modes(group: GroupDescriptor, cutoff: f64) -> Result<Vec<SpectralMode>> {
    enumerate_modes_capped(group, cutoff, DEFAULT_MODE_CAP)
}

pub fn enumerate_modes_capped(group: GroupDescriptor, cutoff: f64, cap: usize) -> Result<Vec<SpectralMode>> {
    if !(cutoff >= 0.0) {
        return Err(Error::invalid("M", format!("cutoff must be ≥ 0, got {cutoff}")));
    }
    match group {
        GroupDescriptor::Su2 => {
            let kmax = su2_level_max(cutoff);
            if kmax + 1 > cap {
                return Err(Error::ResourceCap {
                    what: "SU(2) levels",
                    count: kmax as u128 + 1,
                    cap: cap as u128,
                });
            }
            Ok((0..=kmax)
                .map(|k| SpectralMode {
                    index: ModeIndex::Level(k),
                    eigenvalue: su2_eigenvalue(k),
                    dim: k + 1,
                })
                .collect())
        }
        GroupDescriptor::Torus(n) => {
            let smax = torus_norm_sq_max(cutoff);
            let estimate = unit_ball_volume(n) * (smax as f64).sqrt().powi(n as i32);
            if estimate > 2.0 * cap as f64 {
                return Err(Error::ResourceCap {
                    what: "torus frequencies",
                    count: estimate as u128,
                    cap: cap as u128,
                });
            }
            let mut freqs: Vec<(u64, Vec<i64>)> = Vec::new();
            let mut cur = vec![0i64; n];
            collect_frequencies(&mut cur, 0, smax, &mut freqs, cap)?;
            freqs.sort_by(|a, b| match a.0.cmp(&b.0) {
                Ordering::Equal => a.1.cmp(&b.1),
                o => o,
            });
            Ok(freqs
                .into_iter()
                .map(|(s, m)| SpectralMode {
                    index: ModeIndex::Frequency(m),
                    eigenvalue: torus_eigenvalue(s),
                    dim: 1,
                })
                .collect())
        }
    }
}

fn collect_frequencies(
    cur: &mut Vec<i64>,
    pos: usize,
    budget: u64,
    out: &mut Vec<(u64, Vec<i64>)>,
    cap: usize,
) -> Result<()> {
    if pos == cur.len() {
        if out.len() >= cap {
            return Err(Error::ResourceCap {
                what: "torus frequencies",
                count: out.len() as u128 + 1,
                cap: cap as u128,
            });
        }
        let s = cur.iter().map(|&c| (c * c) as u64).sum();
        out.push((s, cur.clone()));
        return Ok(());
    }
    let r = (budget as f64).sqrt().floor() as i64;
    for c in -r..=r {
        let c2 = (c * c) as u64;
        if c2 > budget {
            continue;
        }
        cur[pos] = c;
        collect_frequencies(cur, pos + 1, budget - c2, out, cap)?;
    }
    cur[pos] = 0;
    Ok(())
}

/// A whole Laplacian eigenvalue together with the dimension of its
/// eigenspace and the dimension of a single representation inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shell {
    pub eigenvalue: f64,
    /// `dim F_i`.
    pub multiplicity: u64,
    /// Irrep dimension (1 on the torus).
    pub rep_dim: usize,
}

/// Eigenvalue shells in ascending order, without end.
pub fn shells(group: GroupDescriptor) -> Shells {
    Shells {
        group,
        next: 0,
        table: Vec::new(),
    }
}

/// Iterator over [`Shell`]s; see [`shells`].
#[derive(Debug, Clone)]
pub struct Shells {
    group: GroupDescriptor,
    next: u64,
    // representation counts r_n(s) for the torus
    table: Vec<u64>,
}

impl Iterator for Shells {
    type Item = Shell;

    fn next(&mut self) -> Option<Shell> {
        match self.group {
            GroupDescriptor::Su2 => {
                let k = self.next as usize;
                self.next += 1;
                Some(Shell {
                    eigenvalue: su2_eigenvalue(k),
                    multiplicity: ((k + 1) * (k + 1)) as u64,
                    rep_dim: k + 1,
                })
            }
            GroupDescriptor::Torus(n) => loop {
                let s = self.next;
                if s as usize >= self.table.len() {
                    let len = (2 * self.table.len()).max(256);
                    self.table = sum_of_squares_counts(n, len);
                }
                self.next += 1;
                let count = self.table[s as usize];
                if count > 0 {
                    break Some(Shell {
                        eigenvalue: torus_eigenvalue(s),
                        multiplicity: count,
                        rep_dim: 1,
                    });
                }
            },
        }
    }
}

/// `r_n(s)` = number of `m ∈ Z^n` with `|m|² = s`, for `s < len`.
pub fn sum_of_squares_counts(n: usize, len: usize) -> Vec<u64> {
    let mut one = vec![0u64; len];
    let mut c = 0usize;
    while c * c < len {
        one[c * c] += if c == 0 { 1 } else { 2 };
        c += 1;
    }
    let mut acc = one.clone();
    for _ in 1..n {
        let mut next = vec![0u64; len];
        for (s, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut c = 0usize;
            while s + c * c < len {
                next[s + c * c] += a * one[c * c];
                c += 1;
            }
        }
        acc = next;
    }
    acc
}

/// Eigenvalue counting function `N(λ) = Σ_{λ_i ≤ λ} dim F_i`.
pub fn counting_function(group: GroupDescriptor, lambda: f64) -> u64 {
    shells(group)
        .take_while(|s| within(s.eigenvalue, lambda))
        .map(|s| s.multiplicity)
        .sum()
}

/// `N(λ) / λ^{n/2}`.
pub fn weyl_ratio(group: GroupDescriptor, lambda: f64) -> f64 {
    assert!(lambda > 0.0, "weyl_ratio needs λ > 0");
    counting_function(group, lambda) as f64 / lambda.powf(group.dim() as f64 / 2.0)
}

/// Limit of [`weyl_ratio`]: `vol(B_n) vol(G) / (2π)^n`.
pub fn weyl_constant(group: GroupDescriptor) -> f64 {
    let n = group.dim();
    unit_ball_volume(n) * group.vol() / (2.0 * PI).powi(n as i32)
}

/// Sup-norm and multiplicity constants fitted over all nonzero eigenvalues
/// up to a cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DonnellyFit {
    /// `max ‖φ‖_∞ / (λ^{(n−1)/4} ‖φ‖₂)` over basis eigenfunctions.
    pub c2: f64,
    /// `max dim F_i / λ_i^{(n−1)/2}`.
    pub c3: f64,
    /// `max dim F_i / λ_i^{n/2}`.
    pub c_weyl_sup: f64,
    /// Largest eigenvalue included.
    pub max_eigenvalue: f64,
}

/// Sup-norm ratios of basis eigenfunctions with `0 < λ ≤ cutoff`.
///
/// Torus exponentials have `|φ| ≡ 1` and unit L² norm. On SU(2) the basis is
/// `sqrt((k+1)/vol) π_pm`; `sup |π_pm|` is found by scanning the real
/// rotations `[[cos s, sin s], [−sin s, cos s]]`, `s ∈ [0, π/2]`, which
/// reach every modulus pattern since diagonal phases act by phases.
pub fn verify_donnelly(group: GroupDescriptor, cutoff: f64) -> DonnellyFit {
    assert!(cutoff > 0.0);
    let n = group.dim() as f64;
    let mut fit = DonnellyFit {
        c2: 0.0,
        c3: 0.0,
        c_weyl_sup: 0.0,
        max_eigenvalue: 0.0,
    };
    for shell in shells(group).skip(1).take_while(|s| within(s.eigenvalue, cutoff)) {
        let lam = shell.eigenvalue;
        let sup_ratio = match group {
            GroupDescriptor::Torus(_) => 1.0,
            GroupDescriptor::Su2 => {
                let level = shell.rep_dim - 1;
                let l2 = (group.vol() / shell.rep_dim as f64).sqrt();
                su2_coefficient_sup(level) / l2
            }
        };
        fit.c2 = fit.c2.max(sup_ratio / lam.powf((n - 1.0) / 4.0));
        fit.c3 = fit.c3.max(shell.multiplicity as f64 / lam.powf((n - 1.0) / 2.0));
        fit.c_weyl_sup = fit.c_weyl_sup.max(shell.multiplicity as f64 / lam.powf(n / 2.0));
        fit.max_eigenvalue = lam;
    }
    fit
}

/// `max_{p,m} sup_g |π_pm(g)|` at one level.
fn su2_coefficient_sup(level: usize) -> f64 {
    use num_complex::Complex64;
    let mut best = 0.0_f64;
    for s in lin_grid(0.0, PI / 2.0, 181) {
        let (c, sn) = (s.cos(), s.sin());
        let u = [
            [Complex64::new(c, 0.0), Complex64::new(sn, 0.0)],
            [Complex64::new(-sn, 0.0), Complex64::new(c, 0.0)],
        ];
        let m = sym_power(level, u);
        best = best.max(m.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus1_modes_at_40() {
        let modes = enumerate_modes(GroupDescriptor::Torus(1), 40.0).unwrap();
        let freqs: Vec<i64> = modes.iter().map(|m| m.frequency()[0]).collect();
        assert_eq!(freqs, vec![0, -1, 1]);
    }

    #[test]
    fn su2_modes_at_10() {
        let modes = enumerate_modes(GroupDescriptor::Su2, 10.0).unwrap();
        let eig: Vec<f64> = modes.iter().map(|m| m.eigenvalue).collect();
        assert_eq!(eig, vec![0.0, 3.0, 8.0]);
        assert_eq!(modes[2].dim, 3);
        assert_eq!(modes[2].weight(), 9);
    }

    #[test]
    fn zero_cutoff_is_trivial_only() {
        for g in [GroupDescriptor::Torus(3), GroupDescriptor::Su2] {
            let modes = enumerate_modes(g, 0.0).unwrap();
            assert_eq!(modes.len(), 1);
            assert!(modes[0].is_trivial());
        }
    }

    #[test]
    fn mode_cap_is_enforced() {
        let err = enumerate_modes_capped(GroupDescriptor::Torus(3), 1e5, 1000).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
        assert!(enumerate_modes(GroupDescriptor::Torus(1), -1.0).is_err());
    }

    #[test]
    fn shells_match_modes() {
        for g in [
            GroupDescriptor::Torus(2),
            GroupDescriptor::Torus(3),
            GroupDescriptor::Su2,
        ] {
            let cutoff = 900.0;
            let modes = enumerate_modes(g, cutoff).unwrap();
            let from_modes: usize = modes.iter().map(|m| m.weight()).sum();
            assert_eq!(counting_function(g, cutoff), from_modes as u64);
        }
    }

    #[test]
    fn torus1_weyl_exact_count() {
        let lam = 4.0 * PI * PI;
        assert_eq!(counting_function(GroupDescriptor::Torus(1), lam), 3);
        let r = weyl_ratio(GroupDescriptor::Torus(1), lam);
        assert!((r - 3.0 / (2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn weyl_constants() {
        assert!((weyl_constant(GroupDescriptor::Su2) - 1.0 / 3.0).abs() < 1e-14);
        assert!((weyl_constant(GroupDescriptor::Torus(2)) - 1.0 / (4.0 * PI)).abs() < 1e-14);
        assert!((weyl_constant(GroupDescriptor::Torus(1)) - 1.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn sum_of_squares_small() {
        // r_2: 1, 4, 4, 0, 4, 8
        assert_eq!(&sum_of_squares_counts(2, 6), &[1, 4, 4, 0, 4, 8]);
    }
}
