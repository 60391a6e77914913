//! Generator sets, their validation, and the diagonal general direction.

pub mod relation;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, skew_deviation, ComplexMatrix, SkewHermitianMatrix};
use crate::tolerance::Tolerances;

use self::relation::find_integer_relation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    U,
    SU,
}

/// Target Lie algebra `u(d)` or `su(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub kind: AlgebraKind,
    pub dim: usize,
}

impl Algebra {
    pub fn new(kind: AlgebraKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        Ok(Self { kind, dim })
    }

    pub fn u(dim: usize) -> Self {
        Self::new(AlgebraKind::U, dim).expect("dim >= 1")
    }

    pub fn su(dim: usize) -> Self {
        Self::new(AlgebraKind::SU, dim).expect("dim >= 1")
    }

    /// Real dimension: `d^2` for u(d), `d^2 - 1` for su(d).
    pub fn target_dimension(&self) -> usize {
        let d2 = self.dim * self.dim;
        match self.kind {
            AlgebraKind::U => d2,
            AlgebraKind::SU => d2 - 1,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AlgebraKind::U => write!(f, "u({})", self.dim),
            AlgebraKind::SU => write!(f, "su({})", self.dim),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub label: String,
    pub matrix: SkewHermitianMatrix,
}

impl Generator {
    pub fn new(label: impl Into<String>, matrix: SkewHermitianMatrix) -> Self {
        Self {
            label: label.into(),
            matrix,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Unvalidated generator as read from input.
#[derive(Debug, Clone, PartialEq)]
pub struct RawGenerator {
    pub label: String,
    pub matrix: ComplexMatrix,
}

impl RawGenerator {
    pub fn new(label: impl Into<String>, matrix: ComplexMatrix) -> Self {
        Self {
            label: label.into(),
            matrix,
        }
    }
}

impl From<Generator> for RawGenerator {
    fn from(g: Generator) -> Self {
        Self {
            label: g.label,
            matrix: g.matrix.into_matrix(),
        }
    }
}

/// The `theta_j` of a diagonal direction `i diag(theta_1, ..., theta_d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Phases(pub Vec<f64>);

impl Phases {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// A validated, ordered set of skew-Hermitian generators with a designated
/// diagonal general direction.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    algebra: Algebra,
    generators: Vec<Generator>,
    general_index: usize,
    spectrum_issue: Option<Error>,
}

impl GeneratorSet {
    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn general_index(&self) -> usize {
        self.general_index
    }

    pub fn designated(&self) -> &Generator {
        &self.generators[self.general_index]
    }

    pub fn phases(&self) -> Phases {
        Phases(self.designated().matrix.diagonal_phases())
    }

    /// Set by [`validate_set_lenient`] when the designated spectrum is
    /// degenerate.
    pub fn spectrum_issue(&self) -> Option<&Error> {
        self.spectrum_issue.as_ref()
    }

    /// Generators other than the designated direction, with their positions.
    pub fn off_designated(&self) -> impl Iterator<Item = (usize, &Generator)> {
        let skip = self.general_index;
        self.generators.iter().enumerate().filter(move |(j, _)| *j != skip)
    }

    /// Append a generator that is valid by construction (bridges, chains).
    pub fn with_generator(&self, g: Generator) -> Result<Self> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: g.dim(),
            });
        }
        let mut next = self.clone();
        next.generators.push(g);
        Ok(next)
    }

    /// Conjugate every generator by the permutation `result[i][j] = X[order[i]][order[j]]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let mut next = self.clone();
        for g in &mut next.generators {
            g.matrix = g.matrix.permuted(order);
        }
        next
    }

    pub fn into_raw(self) -> (Algebra, Vec<RawGenerator>, usize) {
        let raw = self.generators.into_iter().map(RawGenerator::from).collect();
        (self.algebra, raw, self.general_index)
    }
}

/// Check every generator-set invariant, including a non-degenerate
/// designated spectrum.
pub fn validate_set(
    algebra: Algebra,
    raw: Vec<RawGenerator>,
    general_index: usize,
    tol: &Tolerances,
) -> Result<GeneratorSet> {
    let set = validate_set_lenient(algebra, raw, general_index, tol)?;
    match set.spectrum_issue {
        Some(err) => Err(err),
        None => Ok(set),
    }
}

/// Like [`validate_set`], but a degenerate designated spectrum is recorded
/// on the set instead of rejected. Downstream checks then cannot certify
/// universality.
pub fn validate_set_lenient(
    algebra: Algebra,
    raw: Vec<RawGenerator>,
    general_index: usize,
    tol: &Tolerances,
) -> Result<GeneratorSet> {
    if raw.is_empty() {
        return Err(Error::InvalidInput("generator list is empty".into()));
    }
    if general_index >= raw.len() {
        return Err(Error::InvalidInput(format!(
            "general_index {general_index} is out of range for {} generators",
            raw.len()
        )));
    }
    let d = algebra.dim;
    let mut generators = Vec::with_capacity(raw.len());
    for (index, g) in raw.into_iter().enumerate() {
        let n = g.matrix.dim();
        if n != d {
            return Err(Error::InvalidInput(format!(
                "generator {index} ('{}') is {n}x{n}, expected {d}x{d}",
                g.label
            )));
        }
        let scale = g.matrix.max_abs();
        let deviation = skew_deviation(&g.matrix);
        if deviation > tol.symmetry * scale.max(1.0) {
            return Err(Error::NotSkewHermitian { index, deviation });
        }
        if algebra.kind == AlgebraKind::SU {
            let trace = g.matrix.trace().norm();
            if trace > tol.trace * d as f64 * scale {
                return Err(Error::NotTraceless { index, trace });
            }
        }
        generators.push(Generator {
            label: g.label,
            matrix: SkewHermitianMatrix::new(g.matrix, f64::INFINITY)?,
        });
    }

    let designated = &generators[general_index].matrix;
    let off_diagonal = designated.matrix().max_off_diagonal();
    if off_diagonal > tol.diagonal * designated.matrix().max_abs() {
        return Err(Error::DesignatedNotDiagonal {
            index: general_index,
            off_diagonal,
        });
    }
    let spectrum_issue = degenerate_pair(&designated.diagonal_phases(), tol.spectrum).map(|(first, second)| {
        Error::DegenerateSpectrum {
            index: general_index,
            first,
            second,
        }
    });

    Ok(GeneratorSet {
        algebra,
        generators,
        general_index,
        spectrum_issue,
    })
}

/// First pair of phases closer than `tau_spec * max |theta|`.
fn degenerate_pair(theta: &[f64], tau_spec: f64) -> Option<(usize, usize)> {
    if theta.len() < 2 {
        return None;
    }
    let scale = theta.iter().map(|t| t.abs()).fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..theta.len()).collect();
    order.sort_by(|&a, &b| theta[a].total_cmp(&theta[b]));
    order.windows(2).find_map(|w| {
        let gap = theta[w[1]] - theta[w[0]];
        (gap <= tau_spec * scale).then(|| (w[0].min(w[1]), w[0].max(w[1])))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndependenceStatus {
    HeuristicallyIndependent,
    Dependent,
    ConstructedExact,
}

impl IndependenceStatus {
    pub fn is_independent(self) -> bool {
        !matches!(self, IndependenceStatus::Dependent)
    }
}

/// Outcome of the rational-independence test on a diagonal direction.
///
/// `relation` holds coefficients for `(1, theta_1 / 2pi, ...)`. For
/// `ConstructedExact` no search is run: `relation` is `None` and `residual`
/// is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumIndependenceVerdict {
    pub status: IndependenceStatus,
    pub relation: Option<Vec<i64>>,
    pub search_bound: u32,
    pub residual: f64,
}

impl SpectrumIndependenceVerdict {
    pub fn constructed(search_bound: u32) -> Self {
        Self {
            status: IndependenceStatus::ConstructedExact,
            relation: None,
            search_bound,
            residual: 0.0,
        }
    }
}

/// The vector `(1, theta_1/2pi, ..., theta_k/2pi)` tested for relations:
/// all `d` phases for u(d), the first `d - 1` for su(d).
pub fn relation_vector(phases: &Phases, algebra: Algebra) -> Vec<f64> {
    let take = match algebra.kind {
        AlgebraKind::U => phases.len(),
        AlgebraKind::SU => phases.len().saturating_sub(1),
    };
    std::iter::once(1.0)
        .chain(phases.as_slice()[..take].iter().map(|t| t / (2.0 * PI)))
        .collect()
}

/// Heuristic rational-independence test for a diagonal direction.
pub fn check_general_direction(
    phases: &Phases,
    algebra: Algebra,
    bound: u32,
    tau_rel: f64,
) -> SpectrumIndependenceVerdict {
    let bound = bound.max(1);
    let x = relation_vector(phases, algebra);
    let search = find_integer_relation(&x, bound, tau_rel);
    SpectrumIndependenceVerdict {
        status: if search.relation.is_some() {
            IndependenceStatus::Dependent
        } else {
            IndependenceStatus::HeuristicallyIndependent
        },
        relation: search.relation,
        search_bound: bound,
        residual: search.residual,
    }
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Phases of the built-in general direction: square roots of the first
/// primes, with the last entry replaced by the trace-zero completion in
/// su(d).
pub fn general_direction_phases(algebra: Algebra) -> Phases {
    let d = algebra.dim;
    let mut theta: Vec<f64> = match algebra.kind {
        AlgebraKind::U => first_primes(d).iter().map(|&p| (p as f64).sqrt()).collect(),
        AlgebraKind::SU => first_primes(d - 1).iter().map(|&p| (p as f64).sqrt()).collect(),
    };
    if algebra.kind == AlgebraKind::SU {
        let sum: f64 = theta.iter().sum();
        theta.push(-sum);
    }
    Phases(theta)
}

/// `i diag(sqrt(p_1), ..., sqrt(p_d))`, or its trace-zero variant for su(d).
/// Independence of `1` and square roots of distinct primes over the
/// rationals makes this a general direction without any numerical test.
pub fn make_general_direction(algebra: Algebra) -> Generator {
    let phases = general_direction_phases(algebra);
    Generator::new("X1", SkewHermitianMatrix::from_phases(phases.as_slice()))
}

/// Whether `phases` reproduce [`general_direction_phases`] to within a few ulps.
pub fn is_constructed_direction(phases: &Phases, algebra: Algebra) -> bool {
    let reference = general_direction_phases(algebra);
    reference.len() == phases.len()
        && reference
            .as_slice()
            .iter()
            .zip(phases.as_slice())
            .all(|(a, b)| (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(1.0))
}

/// Small-step bound per generator and for the whole set.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonBound {
    /// `pi / (2 ||X_j||_op)`; `+inf` for a zero generator.
    pub per_generator: Vec<f64>,
    pub epsilon_max: f64,
}

/// `pi / (2 ||X||_op)`, the largest `eps` for which `exp(eps X)` stays within
/// operator distance `sqrt(2)` of the identity (strictly below it).
pub fn generator_epsilon(x: &SkewHermitianMatrix) -> f64 {
    let norm = linalg::operator_norm(x.matrix());
    if norm == 0.0 {
        f64::INFINITY
    } else {
        FRAC_PI_2 / norm
    }
}

pub fn epsilon_bound(set: &GeneratorSet) -> Result<EpsilonBound> {
    let per_generator: Vec<f64> = set.generators().iter().map(|g| generator_epsilon(&g.matrix)).collect();
    let epsilon_max = per_generator.iter().copied().fold(f64::INFINITY, f64::min);
    if !epsilon_max.is_finite() {
        return Err(Error::InvalidInput(
            "every generator is zero; no small-step bound exists".into(),
        ));
    }
    Ok(EpsilonBound {
        per_generator,
        epsilon_max,
    })
}

/// `||exp(eps X) - I||_op`, measured numerically.
pub fn identity_distance(x: &SkewHermitianMatrix, eps: f64) -> Result<f64> {
    let u = linalg::matrix_exp(x, eps)?;
    let diff = &u - &ComplexMatrix::identity(x.dim());
    Ok(linalg::operator_norm(&diff))
}

/// `2 max_k |sin(eps lambda_k / 2)|` over the eigenphases of `X`.
pub fn identity_distance_from_eigenphases(x: &SkewHermitianMatrix, eps: f64) -> Result<f64> {
    let (lambda, _) = linalg::eigenphases(x)?;
    Ok(lambda
        .iter()
        .map(|l| 2.0 * (eps * l / 2.0).sin().abs())
        .fold(0.0, f64::max))
}

/// Convenience constructor for tests and examples: `i diag(theta)`.
pub fn diagonal_generator(label: &str, theta: &[f64]) -> Generator {
    Generator::new(label, SkewHermitianMatrix::from_phases(theta))
}
