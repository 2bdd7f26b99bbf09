//! Heat kernels on `T^n` and SU(2) as eigenfunction series: pointwise
//! values, L² norms, spectral tails, truncation planning, and fits of the
//! Gaussian-bound and small-time trace constants.
//!
//! Densities are taken with respect to Riemannian volume, so the
//! equilibrium value is `1 / vol(G)`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupPoint, Quaternion};
use crate::irrep::character;
use crate::numeric::{linear_fit, CompensatedSum};
use crate::spectra::{
    enumerate_modes, shells, sum_of_squares_counts, verify_donnelly, Shell, SpectralMode, DEFAULT_MODE_CAP,
};

/// Relative size below which series terms are dropped.
pub const SERIES_RTOL: f64 = 1e-18;

/// Reference cutoff used to fit the sup-norm constant `c2`.
pub const DONNELLY_REFERENCE_CUTOFF: f64 = 400.0;

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("t", format!("diffusion time must be > 0, got {t}")))
    }
}

/// Shells with eigenvalue strictly above `cutoff`, ascending.
fn shells_above(group: GroupDescriptor, cutoff: f64) -> Box<dyn Iterator<Item = Shell>> {
    match group {
        GroupDescriptor::Su2 => {
            let start = ((1.0 + cutoff.max(0.0)).sqrt() - 1.0).floor().max(0.0) as usize;
            Box::new(shells(group).skip(start).filter(move |s| s.eigenvalue > cutoff))
        }
        GroupDescriptor::Torus(n) => {
            let start = (cutoff.max(0.0) / (4.0 * PI * PI)).floor() as usize;
            Box::new(TorusShellsFrom::new(n, start).filter(move |s| s.eigenvalue > cutoff))
        }
    }
}

struct TorusShellsFrom {
    n: usize,
    s: usize,
    table: Vec<u64>,
}

impl TorusShellsFrom {
    fn new(n: usize, start: usize) -> Self {
        Self {
            n,
            s: start,
            table: Vec::new(),
        }
    }
}

impl Iterator for TorusShellsFrom {
    type Item = Shell;

    fn next(&mut self) -> Option<Shell> {
        loop {
            if self.s >= self.table.len() {
                let len = (2 * self.s).max(256);
                self.table = sum_of_squares_counts(self.n, len);
            }
            let s = self.s;
            self.s += 1;
            if self.table[s] > 0 {
                return Some(Shell {
                    eigenvalue: 4.0 * PI * PI * s as f64,
                    multiplicity: self.table[s],
                    rep_dim: 1,
                });
            }
        }
    }
}

/// `Σ_{λ > cutoff} dim F · f(λ)` where `f(λ) ≤ poly(λ)·e^{−rate·λ}`.
/// Stops once the largest possible remaining term is below
/// [`SERIES_RTOL`] of the running sum.
fn shell_tail_sum(group: GroupDescriptor, cutoff: f64, rate: f64, term: impl Fn(&Shell) -> f64) -> f64 {
    let n = group.dim() as f64;
    let envelope = |lam: f64| (-rate * lam).exp() * (1.0 + lam).powf(n + 1.0);
    // past the envelope's peak, once it is negligible in absolute terms, stop
    let peak = (n + 1.0) / rate;
    if cutoff > peak && envelope(cutoff) < 1e-300 {
        return 0.0;
    }
    let mut acc = CompensatedSum::new();
    for shell in shells_above(group, cutoff) {
        let lam = shell.eigenvalue;
        acc.add(shell.multiplicity as f64 * term(&shell));
        if lam > peak {
            let bound = envelope(lam);
            if bound <= SERIES_RTOL * acc.value().abs() || bound < 1e-300 {
                break;
            }
        }
    }
    acc.value()
}

/// `H(e, e, t) = Σ dim F_i e^{−λ_i t} / vol`.
pub fn heat_diagonal(group: GroupDescriptor, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(shell_tail_sum(group, -1.0, t, |s| (-s.eigenvalue * t).exp()) / group.vol())
}

/// `‖H_t‖₂ = sqrt(Σ dim F_i e^{−2λ_i t} / vol)`, constant mode included.
pub fn heat_l2_norm(group: GroupDescriptor, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok((shell_tail_sum(group, -1.0, 2.0 * t, |s| (-2.0 * s.eigenvalue * t).exp()) / group.vol()).sqrt())
}

/// `‖H_t − H_{t,M}‖₂`, the exact L² truncation error.
pub fn heat_l2_tail(group: GroupDescriptor, t: f64, cutoff: f64) -> Result<f64> {
    check_time(t)?;
    Ok((shell_tail_sum(group, cutoff, 2.0 * t, |s| (-2.0 * s.eigenvalue * t).exp()) / group.vol()).sqrt())
}

/// Pointwise truncation bound `sup_x |H_t − H_{t,M}|(x) ≤ Σ_{λ>M} dim F e^{−λt} / vol`.
pub fn heat_sup_tail(group: GroupDescriptor, t: f64, cutoff: f64) -> Result<f64> {
    check_time(t)?;
    Ok(shell_tail_sum(group, cutoff, t, |s| (-s.eigenvalue * t).exp()) / group.vol())
}

/// The majorant `Σ_{λ_i > M} dim F_i e^{−λ_i t} c2 λ_i^{(n−1)/4}` with the
/// supplied sup-norm constant.
pub fn spectral_tail_with(group: GroupDescriptor, t: f64, cutoff: f64, c2: f64) -> Result<f64> {
    check_time(t)?;
    let e = (group.dim() as f64 - 1.0) / 4.0;
    Ok(shell_tail_sum(group, cutoff, t, |s| {
        (-s.eigenvalue * t).exp() * c2 * s.eigenvalue.powf(e)
    }))
}

/// [`spectral_tail_with`] using the fitted `c2` of the group.
pub fn spectral_tail(group: GroupDescriptor, t: f64, cutoff: f64) -> Result<f64> {
    spectral_tail_with(group, t, cutoff, fitted_c2(group))
}

/// Sup-norm constant `c2` fitted by [`verify_donnelly`] at the reference cutoff.
pub fn fitted_c2(group: GroupDescriptor) -> f64 {
    verify_donnelly(group, DONNELLY_REFERENCE_CUTOFF).c2
}

/// Truncated heat kernel in spectral form: modes and coefficients `e^{−λt}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatSeries {
    pub group: GroupDescriptor,
    pub t: f64,
    pub modes: Vec<(SpectralMode, f64)>,
}

impl HeatSeries {
    /// `H_{t,M}` (with the constant mode) or `H̃_{t,M}` (without).
    pub fn new(group: GroupDescriptor, t: f64, cutoff: f64, include_constant: bool) -> Result<Self> {
        check_time(t)?;
        let modes = enumerate_modes(group, cutoff)?
            .into_iter()
            .filter(|m| include_constant || !m.is_trivial())
            .map(|m| {
                let c = (-m.eigenvalue * t).exp();
                (m, c)
            })
            .collect();
        Ok(Self { group, t, modes })
    }

    /// Series accurate pointwise to `rtol · H(e, e, t)`.
    pub fn adaptive(group: GroupDescriptor, t: f64, rtol: f64) -> Result<Self> {
        let cutoff = pointwise_cutoff(group, t, rtol)?;
        Self::new(group, t, cutoff, true)
    }

    pub fn cutoff(&self) -> f64 {
        self.modes.last().map_or(0.0, |(m, _)| m.eigenvalue)
    }

    pub fn evaluate(&self, x: &GroupPoint) -> f64 {
        assert_eq!(x.group(), self.group, "point from another group");
        let mut acc = CompensatedSum::new();
        match x {
            GroupPoint::Torus(coords) => {
                for (mode, c) in &self.modes {
                    let m = mode.frequency();
                    let phase: f64 = m.iter().zip(coords).map(|(&mi, &xi)| mi as f64 * xi).sum();
                    acc.add(c * (2.0 * PI * phase).cos());
                }
            }
            GroupPoint::Su2(_) => {
                let theta = x.angle();
                let vol = self.group.vol();
                for (mode, c) in &self.modes {
                    let k = mode.level();
                    acc.add(c * (k + 1) as f64 / vol * character(k, theta));
                }
            }
        }
        acc.value()
    }

    /// Convolution: coefficients multiply, times add.
    pub fn convolve(&self, other: &HeatSeries) -> HeatSeries {
        assert_eq!(self.group, other.group);
        let modes = self
            .modes
            .iter()
            .filter_map(|(m, a)| {
                other
                    .modes
                    .iter()
                    .find(|(m2, _)| m2.index == m.index)
                    .map(|(_, b)| (m.clone(), a * b))
            })
            .collect();
        HeatSeries {
            group: self.group,
            t: self.t + other.t,
            modes,
        }
    }

    pub fn l2_norm(&self) -> f64 {
        let vol = self.group.vol();
        let s: CompensatedSum = self
            .modes
            .iter()
            .map(|(m, c)| m.weight() as f64 * c * c / vol)
            .collect();
        s.value().sqrt()
    }
}

/// `H_{t,M}(x)`.
pub fn heat_value(group: GroupDescriptor, x: &GroupPoint, t: f64, cutoff: f64) -> Result<f64> {
    Ok(HeatSeries::new(group, t, cutoff, true)?.evaluate(x))
}

/// Smallest eigenvalue cutoff with pointwise truncation error at most
/// `rtol · H(e, e, t)`.
pub fn pointwise_cutoff(group: GroupDescriptor, t: f64, rtol: f64) -> Result<f64> {
    check_time(t)?;
    let target = rtol * heat_diagonal(group, t)?;
    let vol = group.vol();
    let n = group.dim() as f64;
    let peak = (n + 1.0) / t;
    let mut seen: Vec<Shell> = Vec::new();
    let mut terms: Vec<f64> = Vec::new();
    let mut count: u64 = 0;
    for shell in shells(group) {
        let lam = shell.eigenvalue;
        count += shell.multiplicity / shell.rep_dim as u64;
        if count > DEFAULT_MODE_CAP as u64 {
            return Err(Error::ResourceCap {
                what: "heat series modes",
                count: count as u128,
                cap: DEFAULT_MODE_CAP as u128,
            });
        }
        terms.push(shell.multiplicity as f64 * (-lam * t).exp() / vol);
        seen.push(shell);
        if lam > peak && (-t * lam).exp() * (1.0 + lam).powf(n + 1.0) <= SERIES_RTOL * target {
            break;
        }
    }
    let mut acc = CompensatedSum::new();
    let mut cutoff = seen.last().map_or(0.0, |s| s.eigenvalue);
    for j in (0..seen.len()).rev() {
        // acc holds the tail strictly above seen[j]
        if acc.value() > target {
            break;
        }
        cutoff = seen[j].eigenvalue;
        acc.add(terms[j]);
    }
    Ok(cutoff)
}

/// How a truncation level was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanMethod {
    /// Dyadic formula `M = 2^{2k₀/n}` with `k₀ = max(log₂(1/η), C_G + (n/2) log₂(3n/t))`.
    Formula,
    /// Smallest eigenvalue whose spectral tail is within `η`.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPlan {
    pub method: PlanMethod,
    pub t: f64,
    pub eta: f64,
    pub cutoff: f64,
    /// Dyadic index: integer for the formula plan, `(n/2) log₂ M` for the adaptive one.
    pub k0: f64,
    /// Spectral tail at `cutoff`.
    pub tail_value: f64,
}

/// Both plans plus the smallest `C_G` for which the formula plan reaches
/// the adaptive cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPlans {
    pub adaptive: TruncationPlan,
    pub formula: TruncationPlan,
    pub cg: f64,
    /// `C_G` needed in the time branch of the formula; when the `log₂(1/η)`
    /// branch already dominates, any `C_G` works.
    pub cg_needed: f64,
    pub formula_covers_adaptive: bool,
}

/// Plan a truncation level for `‖H_t − H_{t,M}‖₂ ≤ η` via the spectral tail
/// majorant. The adaptive plan is the one to compute with.
pub fn plan_truncation(group: GroupDescriptor, t: f64, eta: f64, cg: f64) -> Result<TruncationPlans> {
    plan_truncation_with(group, t, eta, cg, fitted_c2(group))
}

pub fn plan_truncation_with(group: GroupDescriptor, t: f64, eta: f64, cg: f64, c2: f64) -> Result<TruncationPlans> {
    check_time(t)?;
    if !(eta > 0.0) {
        return Err(Error::invalid("eta", format!("must be > 0, got {eta}")));
    }
    let n = group.dim() as f64;
    let e = (n - 1.0) / 4.0;

    // terms of the majorant per nonzero shell, until negligible
    let mut shells_seen: Vec<Shell> = Vec::new();
    let mut terms: Vec<f64> = Vec::new();
    let mut mode_count: u64 = 1;
    let peak = (n + 1.0) / t;
    for shell in shells(group).skip(1) {
        let lam = shell.eigenvalue;
        let term = shell.multiplicity as f64 * (-lam * t).exp() * c2 * lam.powf(e);
        mode_count += shell.multiplicity / shell.rep_dim as u64;
        shells_seen.push(shell);
        terms.push(term);
        let envelope = (-t * lam).exp() * (1.0 + lam).powf(n + 1.0);
        if lam > peak && envelope <= SERIES_RTOL * eta.min(terms[0].max(1e-300)) {
            break;
        }
        if mode_count > DEFAULT_MODE_CAP as u64 {
            return Err(Error::ResourceCap {
                what: "truncation modes",
                count: mode_count as u128,
                cap: DEFAULT_MODE_CAP as u128,
            });
        }
    }
    // suffix[j] = Σ_{i ≥ j} terms[i], summed from the small end
    let mut suffix = vec![0.0; terms.len() + 1];
    let mut acc = CompensatedSum::new();
    for j in (0..terms.len()).rev() {
        acc.add(terms[j]);
        suffix[j] = acc.value();
    }
    // cutoff = eigenvalue of shell j ⇒ tail = suffix[j+1]
    let j = (0..shells_seen.len())
        .find(|&j| suffix[j + 1] <= eta)
        .expect("series was summed until negligible");
    let m_adaptive = shells_seen[j].eigenvalue;
    let adaptive = TruncationPlan {
        method: PlanMethod::Adaptive,
        t,
        eta,
        cutoff: m_adaptive,
        k0: n / 2.0 * m_adaptive.log2(),
        tail_value: suffix[j + 1],
    };

    let time_branch = (n / 2.0) * (3.0 * n / t).log2();
    let k0 = (1.0 / eta).log2().max(cg + time_branch).ceil();
    let m_formula = 2f64.powf(2.0 * k0 / n);
    let formula = TruncationPlan {
        method: PlanMethod::Formula,
        t,
        eta,
        cutoff: m_formula,
        k0,
        tail_value: spectral_tail_with(group, t, m_formula, c2)?,
    };
    Ok(TruncationPlans {
        adaptive,
        formula,
        cg,
        cg_needed: adaptive.k0 - time_branch,
        formula_covers_adaptive: m_formula >= m_adaptive,
    })
}

/// Fitted Gaussian upper-bound constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianFit {
    /// Smallest `C₁` with `H(x, y, t) ≤ C₁ t^{−n/2} e^{−r²/(5t)}` on the grid.
    pub c1: f64,
    pub argmax_t: f64,
    pub argmax_r: f64,
}

/// Exponent denominator of the Gaussian bound.
pub const GAUSSIAN_C: f64 = 5.0;

/// Heat values below this fraction of `H(e, e, t)` are not used in the
/// Gaussian fit: the series cannot resolve them.
pub const GAUSSIAN_RESOLVED_FLOOR: f64 = 1e-8;

/// Probe points at (approximately) distance `r` from the identity.
pub fn points_at_distance(group: GroupDescriptor, r: f64) -> Vec<GroupPoint> {
    match group {
        GroupDescriptor::Su2 => vec![GroupPoint::su2(Quaternion::new(r.cos(), r.sin(), 0.0, 0.0))],
        GroupDescriptor::Torus(n) => {
            let mut pts = Vec::new();
            if r <= 0.5 {
                let mut axis = vec![0.0; n];
                axis[0] = r;
                pts.push(GroupPoint::torus(axis));
            }
            if n > 1 && r <= group.diameter() {
                let c = r / (n as f64).sqrt();
                pts.push(GroupPoint::torus(vec![c; n]));
            }
            pts
        }
    }
}

/// Smallest `C₁` with `H(e, x, t) ≤ C₁ t^{−n/2} exp(−d(e,x)²/(5t))` over the
/// grids. Heat values come from adaptive series accurate to 1e−12 relative.
pub fn gaussian_bound_fit(group: GroupDescriptor, t_grid: &[f64], r_grid: &[f64]) -> Result<GaussianFit> {
    let n = group.dim() as f64;
    let per_t: Vec<Result<GaussianFit>> = t_grid
        .par_iter()
        .map(|&t| {
            let series = HeatSeries::adaptive(group, t, 1e-12)?;
            let mut best = GaussianFit {
                c1: 0.0,
                argmax_t: t,
                argmax_r: 0.0,
            };
            let floor = GAUSSIAN_RESOLVED_FLOOR * series.evaluate(&group.identity());
            for &r in r_grid {
                for x in points_at_distance(group, r) {
                    let d = x.angle();
                    let h = series.evaluate(&x);
                    if h < floor {
                        // below the series' resolution the kernel is already
                        // e^{−r²/(4t)}-small, far under the bound
                        continue;
                    }
                    let c = h * t.powf(n / 2.0) * (d * d / (GAUSSIAN_C * t)).exp();
                    if c > best.c1 {
                        best = GaussianFit {
                            c1: c,
                            argmax_t: t,
                            argmax_r: d,
                        };
                    }
                }
            }
            Ok(best)
        })
        .collect();
    let mut best = GaussianFit {
        c1: 0.0,
        argmax_t: f64::NAN,
        argmax_r: f64::NAN,
    };
    for fit in per_t {
        let fit = fit?;
        if fit.c1 > best.c1 {
            best = fit;
        }
    }
    Ok(best)
}

/// Radius `ε sqrt(5 ln(1/(η εⁿ)))` outside which the heat kernel at
/// `t = ε²` is below `C₁ η`.
pub fn gaussian_radius(eps: f64, eta: f64, n: usize) -> f64 {
    eps * (GAUSSIAN_C * (1.0 / (eta * eps.powi(n as i32))).ln()).sqrt()
}

/// Two-term small-time fit of the heat trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceFit {
    pub a0: f64,
    pub a1: f64,
    /// `max |y − (a0 + a1 t)| / a0` over the grid.
    pub rel_residual: f64,
}

/// Least-squares fit of `H(x, x, t) t^{n/2} ≈ a0 + a1 t`.
pub fn heat_trace_fit(group: GroupDescriptor, t_grid: &[f64]) -> Result<TraceFit> {
    if t_grid.iter().any(|&t| !(t > 0.0 && t <= 0.1)) {
        return Err(Error::invalid("t_grid", "times must lie in (0, 0.1]"));
    }
    let n = group.dim() as f64;
    let ys = t_grid
        .iter()
        .map(|&t| Ok(heat_diagonal(group, t)? * t.powf(n / 2.0)))
        .collect::<Result<Vec<f64>>>()?;
    let (a0, a1) = linear_fit(t_grid, &ys);
    let rel_residual = t_grid
        .iter()
        .zip(&ys)
        .map(|(t, y)| (y - a0 - a1 * t).abs() / a0)
        .fold(0.0, f64::max);
    Ok(TraceFit { a0, a1, rel_residual })
}

/// Slope of `log ‖H_t‖₂` against `log t` over the grid.
pub fn heat_norm_slope(group: GroupDescriptor, t_grid: &[f64]) -> Result<f64> {
    let xs: Vec<f64> = t_grid.iter().map(|t| t.ln()).collect();
    let ys = t_grid
        .iter()
        .map(|&t| Ok(heat_l2_norm(group, t)?.ln()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(linear_fit(&xs, &ys).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrapped_gaussian(x: f64, t: f64) -> f64 {
        (-50..=50)
            .map(|j| {
                let y = x + j as f64;
                (4.0 * PI * t).powf(-0.5) * (-y * y / (4.0 * t)).exp()
            })
            .sum()
    }

    #[test]
    fn rejects_nonpositive_time() {
        let g = GroupDescriptor::Su2;
        assert!(heat_value(g, &g.identity(), 0.0, 10.0).is_err());
        assert!(heat_value(g, &g.identity(), -1.0, 10.0).is_err());
    }

    #[test]
    fn torus1_matches_wrapped_gaussian() {
        let g = GroupDescriptor::Torus(1);
        let t = 0.05;
        let series = HeatSeries::new(g, t, 4.0 * PI * PI * 900.0, true).unwrap();
        for x in [0.0, 0.1, 0.25, 0.37, 0.5, 0.9] {
            let h = series.evaluate(&GroupPoint::torus([x]));
            assert!((h - wrapped_gaussian(x, t)).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn long_time_equilibrium() {
        for g in [GroupDescriptor::Torus(2), GroupDescriptor::Su2] {
            let x = points_at_distance(g, 0.3)[0].clone();
            let h = heat_value(g, &x, 50.0, 100.0).unwrap();
            assert!((h - 1.0 / g.vol()).abs() < 1e-12);
            let norm = heat_l2_norm(g, 50.0).unwrap();
            assert!((norm - 1.0 / g.vol().sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn su2_is_zonal() {
        let g = GroupDescriptor::Su2;
        let series = HeatSeries::new(g, 0.05, 500.0, true).unwrap();
        let theta: f64 = 0.8;
        let a = GroupPoint::su2(Quaternion::new(theta.cos(), theta.sin(), 0.0, 0.0));
        let v = Quaternion::new(0.0, 0.3, -0.4, 0.5).normalized();
        let b = GroupPoint::su2(Quaternion::new(
            theta.cos(),
            theta.sin() * v.x,
            theta.sin() * v.y,
            theta.sin() * v.z,
        ));
        assert!((series.evaluate(&a) - series.evaluate(&b)).abs() < 1e-12);
    }

    #[test]
    fn normalization_by_quadrature() {
        // T^1: periodic trapezoid rule
        let g = GroupDescriptor::Torus(1);
        let s = HeatSeries::new(g, 0.01, 4e4, true).unwrap();
        let n = 2000;
        let total: f64 = (0..n)
            .map(|i| s.evaluate(&GroupPoint::torus([i as f64 / n as f64])))
            .sum::<f64>()
            / n as f64;
        assert!((total - 1.0).abs() < 1e-6);

        // SU(2): zonal integral ∫ f(θ) 4π sin²θ dθ, composite Simpson
        let g = GroupDescriptor::Su2;
        let s = HeatSeries::new(g, 0.05, 2000.0, true).unwrap();
        let m = 4000;
        let h = PI / m as f64;
        let f = |th: f64| {
            let x = GroupPoint::su2(Quaternion::new(th.cos(), th.sin(), 0.0, 0.0));
            s.evaluate(&x) * 4.0 * PI * th.sin().powi(2)
        };
        let mut acc = f(0.0) + f(PI);
        for i in 1..m {
            acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        assert!((acc * h / 3.0 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn norm_decreases_in_time() {
        for g in [GroupDescriptor::Torus(1), GroupDescriptor::Su2] {
            let mut prev = f64::INFINITY;
            for t in crate::numeric::log_grid(1e-3, 1.0, 20) {
                let v = heat_l2_norm(g, t).unwrap();
                assert!(v <= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn tail_brute_force_su2() {
        let g = GroupDescriptor::Su2;
        let c2 = fitted_c2(g);
        let t = 0.1;
        let mut direct = 0.0;
        for k in (3..400usize).rev() {
            let lam = (k * (k + 2)) as f64;
            direct += ((k + 1) * (k + 1)) as f64 * (-lam * t).exp() * c2 * lam.sqrt();
        }
        let tail = spectral_tail(g, t, 8.0).unwrap();
        assert!((tail - direct).abs() <= 1e-14 * direct.max(1.0), "{tail} vs {direct}");
    }

    #[test]
    fn far_tail_is_negligible() {
        for g in [GroupDescriptor::Torus(2), GroupDescriptor::Su2] {
            assert!(spectral_tail(g, 0.1, 1e5).unwrap() <= 1e-15);
        }
    }

    #[test]
    fn semigroup_in_spectral_form() {
        let g = GroupDescriptor::Su2;
        let a = HeatSeries::new(g, 0.02, 600.0, true).unwrap();
        let b = HeatSeries::new(g, 0.03, 600.0, true).unwrap();
        let ab = a.convolve(&b);
        let direct = HeatSeries::new(g, 0.05, 600.0, true).unwrap();
        for (x, y) in ab.modes.iter().zip(&direct.modes) {
            assert!((x.1 - y.1).abs() <= 1e-13 * y.1.abs().max(1e-300));
        }
    }

    #[test]
    fn plans_are_consistent() {
        let g = GroupDescriptor::Su2;
        let p = plan_truncation(g, 1.0, 1.0, 1.0).unwrap();
        assert!(p.adaptive.cutoff <= 15.0, "{:?}", p.adaptive);
        assert!(p.adaptive.tail_value <= 1.0);
        let mut prev = 0.0;
        for k in 0..20 {
            let eta = 0.5f64.powi(k);
            let p = plan_truncation(g, 0.05, eta, 1.0).unwrap();
            assert!(p.adaptive.cutoff >= prev);
            assert!(p.adaptive.tail_value <= eta);
            prev = p.adaptive.cutoff;
        }
    }
}
