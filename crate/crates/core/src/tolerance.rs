//! Numerical thresholds shared by every check.
//!
//! The defaults sit well above double-precision noise for dimensions up to a
//! few hundred. Every field can be overridden; [`ToleranceProfile`] gives the
//! three named tiers for the edge threshold.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// How the coupling-graph edge threshold is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeThreshold {
    /// `|X_rl| > tau_edge * max_entry(X)`, per generator.
    #[default]
    Relative,
    /// `|X_rl| > tau_edge`.
    Absolute,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Skew-Hermitian residual, relative to `max(1, max_entry)`.
    pub symmetry: f64,
    /// Trace test in su(d) mode, relative to `d * max_entry`.
    pub trace: f64,
    /// Off-diagonal test for the designated direction, relative to `max_entry`.
    pub diagonal: f64,
    /// Minimum separation between designated phases, relative to `max |theta|`.
    pub spectrum: f64,
    pub edge: f64,
    pub edge_mode: EdgeThreshold,
    /// Rank acceptance threshold for the closure oracle and `numerical_rank`.
    pub rank: f64,
    /// Residual below which an integer combination counts as a relation.
    pub relation: f64,
    /// Coefficient bound `H` for the integer-relation search.
    pub relation_bound: u32,
    /// Closure-property residual accepted on a finished Lie closure.
    pub closure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            symmetry: 1e-12,
            trace: 1e-12,
            diagonal: 1e-12,
            spectrum: 1e-9,
            edge: 1e-12,
            edge_mode: EdgeThreshold::Relative,
            rank: 1e-10,
            relation: 1e-9,
            relation_bound: 10,
            closure: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn with_profile(profile: ToleranceProfile) -> Self {
        Self {
            edge: profile.edge_threshold(),
            ..Self::default()
        }
    }

    /// Threshold an entry of a matrix whose largest entry is `max_entry`
    /// must exceed to count as a coupling.
    pub fn edge_cutoff(&self, max_entry: f64) -> f64 {
        match self.edge_mode {
            EdgeThreshold::Relative => self.edge * max_entry,
            EdgeThreshold::Absolute => self.edge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToleranceProfile {
    Strict,
    #[default]
    Default,
    Loose,
}

impl ToleranceProfile {
    pub fn edge_threshold(self) -> f64 {
        match self {
            ToleranceProfile::Strict => 1e-13,
            ToleranceProfile::Default => 1e-12,
            ToleranceProfile::Loose => 1e-9,
        }
    }
}

impl FromStr for ToleranceProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strict" => Ok(Self::Strict),
            "default" => Ok(Self::Default),
            "loose" => Ok(Self::Loose),
            other => Err(Error::InvalidInput(format!(
                "unknown tolerance profile '{other}' (expected strict, default or loose)"
            ))),
        }
    }
}

impl fmt::Display for ToleranceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strict => "strict",
            Self::Default => "default",
            Self::Loose => "loose",
        })
    }
}
