//! Numerically fitted stand-ins for the unspecified constants `C₁, C₂, C_G`
//! and the first heat-trace coefficients. Each entry is reproducible from
//! the group alone.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::GroupDescriptor;
use crate::heat::{fitted_c2, gaussian_bound_fit, heat_trace_fit};
use crate::numeric::{lin_grid, log_grid};
use crate::word_measure::chernoff_constant;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantsLedger {
    pub group: GroupDescriptor,
    /// Sup-norm constant of normalized eigenfunctions, `‖f‖_∞ ≤ C₂ λ^{(n−1)/4}`.
    pub c2_fit: f64,
    /// Gaussian upper-bound constant with exponent denominator 5.
    pub c1_fit: f64,
    pub a0_fit: f64,
    pub a1_fit: f64,
    /// Group constant used by default in planning formulas.
    pub cg: f64,
    /// `sup_M 2 dim F̃_M / M^{n/2}`.
    pub cg_chernoff_fit: f64,
}

/// Time grid used for the Gaussian constant.
pub fn default_gaussian_times() -> Vec<f64> {
    log_grid(1e-3, 1e-1, 9)
}

/// Radius grid used for the Gaussian constant (up to the diameter).
pub fn default_gaussian_radii(group: GroupDescriptor) -> Vec<f64> {
    lin_grid(0.0, group.diameter(), 41)
}

/// Small-time grid used for the heat-trace fit.
pub fn default_trace_times() -> Vec<f64> {
    log_grid(1e-4, 1e-2, 12)
}

impl ConstantsLedger {
    pub fn fit(group: GroupDescriptor) -> Result<Self> {
        let gauss = gaussian_bound_fit(group, &default_gaussian_times(), &default_gaussian_radii(group))?;
        let trace = heat_trace_fit(group, &default_trace_times())?;
        Ok(Self {
            group,
            c2_fit: fitted_c2(group),
            c1_fit: gauss.c1,
            a0_fit: trace.a0,
            a1_fit: trace.a1,
            cg: 1.0,
            cg_chernoff_fit: chernoff_constant(group),
        })
    }
}
