//! Experiment configuration: a JSON file whose fields can each be overridden
//! on the command line. Every field is optional in the file; what a command
//! needs is checked when the config is resolved.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::group::GroupDescriptor;

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Gap,
    Discrepancy,
    Cover,
    Heat,
    Weyl,
    Lowerbound,
    Selftest,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Gap => "gap",
            Command::Discrepancy => "discrepancy",
            Command::Cover => "cover",
            Command::Heat => "heat",
            Command::Weyl => "weyl",
            Command::Lowerbound => "lowerbound",
            Command::Selftest => "selftest",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Torus,
    Su2,
}

/// Raw configuration. See the README for the meaning and range of each field.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Option<Command>,
    pub group: Option<GroupKind>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub ell: Option<usize>,
    pub ell_max: Option<usize>,
    pub t: Option<f64>,
    pub eta: Option<f64>,
    pub r: Option<f64>,
    pub delta: Option<f64>,
    pub m: Option<u64>,
    pub cutoff: Option<f64>,
    pub lambda: Option<f64>,
    pub trials: Option<usize>,
    pub probes: Option<usize>,
    pub cg: Option<f64>,
    pub master_seed: Option<u64>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub gnuplot: Option<bool>,
    pub timings: Option<bool>,
}

macro_rules! overlay {
    ($base:ident, $over:ident; $($f:ident),*) => {
        ExperimentConfig { $($f: $over.$f.or($base.$f)),* }
    };
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::Usage(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: ExperimentConfig) -> Self {
        let base = self;
        overlay!(base, over; command, group, n, k, ell, ell_max, t, eta, r, delta, m, cutoff,
            lambda, trials, probes, cg, master_seed, threads, output, gnuplot, timings)
    }

    pub fn group_descriptor(&self, default: GroupKind) -> Result<GroupDescriptor, HarnessError> {
        match self.group.unwrap_or(default) {
            GroupKind::Su2 => {
                if let Some(n) = self.n {
                    if n != 3 {
                        return Err(usage("n", format!("SU(2) has dimension 3, got {n}")));
                    }
                }
                Ok(GroupDescriptor::Su2)
            }
            GroupKind::Torus => {
                let n = self.n.unwrap_or(1);
                if !(1..=8).contains(&n) {
                    return Err(usage("n", format!("torus dimension must be in 1..=8, got {n}")));
                }
                Ok(GroupDescriptor::Torus(n))
            }
        }
    }

    pub fn seed(&self) -> Result<u64, HarnessError> {
        self.master_seed
            .ok_or_else(|| usage("master_seed", "is required (no wall-clock seeding)"))
    }
}

pub(crate) fn usage(field: &str, reason: impl fmt::Display) -> HarnessError {
    HarnessError::Usage(format!("`{field}` {reason}"))
}

/// Range checks shared by the commands.
pub(crate) fn positive(field: &str, v: f64) -> Result<f64, HarnessError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(field, format!("must be positive and finite, got {v}")))
    }
}

pub(crate) fn in_open_unit(field: &str, v: f64) -> Result<f64, HarnessError> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(usage(field, format!("must lie in (0, 1), got {v}")))
    }
}

pub(crate) fn at_least_one(field: &str, v: usize) -> Result<usize, HarnessError> {
    if v >= 1 {
        Ok(v)
    } else {
        Err(usage(field, "must be at least 1"))
    }
}
