//! Library side of the `uqc` command-line tool.
//!
//! Each command takes parsed options, does its work through `uqc_core`, and
//! returns the text to print. The binary maps [`CliError`] onto exit codes:
//! 2 for input problems, 3 for numerical failures.

pub mod commands;
pub mod document;
pub mod text;

use std::fmt;

pub use commands::{check, construct, epsilon, oracle, repair, CheckOptions, ConstructOptions, OutputFormat, RepairOptions};

/// Environment variable selecting the tolerance tier.
pub const PROFILE_ENV: &str = "UQC_TOLERANCE_PROFILE";

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<uqc_core::Error> for CliError {
    fn from(e: uqc_core::Error) -> Self {
        match e {
            uqc_core::Error::NumericalFailure(m) => CliError::Numerical(m),
            other => CliError::Input(other.to_string()),
        }
    }
}
