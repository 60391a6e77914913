use thiserror::Error;

/// Errors produced by the universality toolkit.
///
/// Validation variants carry the 0-based position of the offending generator
/// in the input list.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator {index} is not skew-Hermitian (max |X + X^dagger| = {deviation:.3e})")]
    NotSkewHermitian { index: usize, deviation: f64 },

    #[error("generator {index} is not traceless (|trace| = {trace:.3e}) but the target algebra is su(d)")]
    NotTraceless { index: usize, trace: f64 },

    #[error("designated generator {index} is not diagonal (max off-diagonal magnitude {off_diagonal:.3e})")]
    DesignatedNotDiagonal { index: usize, off_diagonal: f64 },

    #[error("designated generator {index} has a degenerate spectrum (phases {first} and {second} coincide)")]
    DegenerateSpectrum { index: usize, first: usize, second: usize },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("generator set is already connected; no bridges are needed")]
    EmptyPlan,
}

pub type Result<T> = std::result::Result<T, Error>;
