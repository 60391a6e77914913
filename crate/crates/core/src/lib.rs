//! Universality checks for exponentiated qudit gate sets.
//!
//! A finite set of skew-Hermitian generators on `C^d`, one of which is a
//! diagonal direction with rationally independent spectrum, generates a
//! dense subgroup of `U(d)` (or `SU(d)`) exactly when the graph on basis
//! indices that links `r` and `l` whenever some other generator has a
//! nonzero `(r, l)` entry is connected. This crate provides:
//!
//! - [`linalg`]: skew-Hermitian matrix arithmetic (commutators, operator
//!   norm, unitary exponential, numerical rank);
//! - [`generators`]: validation of generator sets, the built-in general
//!   direction, the integer-relation independence test and the small-step
//!   bound;
//! - [`universality`]: the coupling graph, the verdict and the block
//!   partition;
//! - [`repair`]: bridging generators for reducible sets and the minimal
//!   two-generator construction;
//! - [`oracle`]: a brute-force Lie-closure and coordinate-subspace scan used
//!   to cross-check every verdict.
//!
//! ```
//! use uqc_core::{check_universality, minimal_pair, Algebra, Tolerances, UniversalityStatus};
//!
//! let set = minimal_pair(Algebra::u(4), None).unwrap();
//! let verdict = check_universality(&set, &Tolerances::default());
//! assert_eq!(verdict.status, UniversalityStatus::Universal);
//! ```

pub mod error;
pub mod generators;
pub mod linalg;
pub mod oracle;
pub mod repair;
pub mod tolerance;
pub mod universality;

pub use error::{Error, Result};
pub use generators::{
    check_general_direction, epsilon_bound, make_general_direction, validate_set, validate_set_lenient, Algebra,
    AlgebraKind, EpsilonBound, Generator, GeneratorSet, IndependenceStatus, Phases, RawGenerator,
    SpectrumIndependenceVerdict,
};
pub use linalg::{commutator, matrix_exp, numerical_rank, operator_norm, ComplexMatrix, SkewHermitianMatrix};
pub use oracle::{closure_block_partition, coordinate_subspace_scan, lie_closure, LieClosureReport};
pub use repair::{minimal_pair, repair, symmetric_chain, Bridge, BridgeSelection, BridgeStyle, RepairPlan};
pub use tolerance::{EdgeThreshold, ToleranceProfile, Tolerances};
pub use universality::{
    block_partition, build_coupling_graph, check_universality, CouplingGraph, Partition, UniversalityStatus,
    UniversalityVerdict,
};

pub use num_complex::Complex64;
