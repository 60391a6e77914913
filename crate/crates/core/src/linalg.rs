//! Dense complex matrix arithmetic for skew-Hermitian operators.
//!
//! Matrices are small and dense (d rarely exceeds a few hundred), so storage
//! is a plain `nalgebra::DMatrix<Complex64>`. The real embedding used for
//! rank computations has a fixed layout: real parts row-major, then imaginary
//! parts row-major, for a vector of length `2 d^2`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

const MAX_SOLVER_ITERATIONS: usize = 100_000;

/// Square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            inner: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self {
            inner: DMatrix::from_fn(dim, dim, f),
        }
    }

    /// Build from rows, checking squareness and finiteness.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidInput("matrix has no rows".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "row {} has {} entries, expected {dim}",
                    r + 1,
                    row.len()
                )));
            }
        }
        Self::from_dmatrix(DMatrix::from_fn(dim, dim, |r, c| rows[r][c]))
    }

    pub fn from_dmatrix(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() {
            return Err(Error::InvalidInput(format!(
                "matrix is {}x{}, expected square",
                inner.nrows(),
                inner.ncols()
            )));
        }
        if let Some((idx, _)) = inner
            .iter()
            .enumerate()
            .find(|(_, z)| !(z.re.is_finite() && z.im.is_finite()))
        {
            let n = inner.nrows();
            // column-major storage
            return Err(Error::InvalidInput(format!(
                "entry ({}, {}) is not finite",
                idx % n + 1,
                idx / n + 1
            )));
        }
        Ok(Self { inner })
    }

    /// Diagonal matrix `diag(entries)`.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let d = entries.len();
        Self::from_fn(d, |r, c| if r == c { entries[r] } else { Complex64::new(0.0, 0.0) })
    }

    /// Matrix unit `E_ab = |e_a><e_b|` (0-based indices).
    pub fn unit(dim: usize, a: usize, b: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.inner[(a, b)] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.inner[(row, col)] = value;
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let d = self.dim();
        let mut best = 0.0f64;
        for c in 0..d {
            for r in 0..d {
                if r != c {
                    best = best.max(self.inner[(r, c)].norm());
                }
            }
        }
        best
    }

    pub fn is_zero(&self) -> bool {
        self.inner.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            inner: &self.inner * factor,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|A_ij - B_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `P A P^{-1}` for the permutation sending new position `i` to old
    /// index `order[i]`, i.e. `result[i][j] = A[order[i]][order[j]]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.dim(), "permutation length must equal dim");
        Self::from_fn(self.dim(), |r, c| self.inner[(order[r], order[c])])
    }

    /// Real embedding of length `2 d^2`: real parts row-major, then
    /// imaginary parts row-major.
    pub fn embed(&self) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; 2 * d * d];
        let (re, im) = out.split_at_mut(d * d);
        for r in 0..d {
            for c in 0..d {
                let z = self.inner[(r, c)];
                re[r * d + c] = z.re;
                im[r * d + c] = z.im;
            }
        }
        out
    }

    /// Inverse of [`ComplexMatrix::embed`].
    pub fn from_embedding(dim: usize, v: &[f64]) -> Result<Self> {
        if v.len() != 2 * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: 2 * dim * dim,
                found: v.len(),
            });
        }
        let (re, im) = v.split_at(dim * dim);
        Self::from_dmatrix(DMatrix::from_fn(dim, dim, |r, c| {
            Complex64::new(re[r * dim + c], im[r * dim + c])
        }))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        writeln!(f, "ComplexMatrix({d}x{d}) [")?;
        for r in 0..d {
            write!(f, "  ")?;
            for c in 0..d {
                let z = self.inner[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

/// Largest entry of `A + A^dagger`.
pub fn skew_deviation(m: &ComplexMatrix) -> f64 {
    let d = m.dim();
    let mut worst = 0.0f64;
    for r in 0..d {
        for c in r..d {
            worst = worst.max((m.get(r, c) + m.get(c, r).conj()).norm());
        }
    }
    worst
}

/// A matrix `X` with `X^dagger = -X` up to a relative tolerance.
#[derive(Clone, PartialEq)]
pub struct SkewHermitianMatrix {
    inner: ComplexMatrix,
}

impl SkewHermitianMatrix {
    /// Accepts `m` when `max|m + m^dagger| <= tau_sym * max(1, max|m|)`.
    pub fn new(m: ComplexMatrix, tau_sym: f64) -> Result<Self> {
        let deviation = skew_deviation(&m);
        if deviation > tau_sym * m.max_abs().max(1.0) {
            return Err(Error::NotSkewHermitian {
                index: 0,
                deviation,
            });
        }
        Ok(Self { inner: m })
    }

    /// Wrap a matrix that is skew-Hermitian by construction (commutators,
    /// matrix units, closure basis elements).
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        Self { inner: m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new_unchecked(ComplexMatrix::zeros(dim))
    }

    /// `i * diag(theta)`.
    pub fn from_phases(theta: &[f64]) -> Self {
        let entries: Vec<Complex64> = theta.iter().map(|&t| Complex64::new(0.0, t)).collect();
        Self::new_unchecked(ComplexMatrix::diagonal(&entries))
    }

    /// `E_ab - E_ba` (0-based, `a != b`).
    pub fn antisymmetric_unit(dim: usize, a: usize, b: usize) -> Self {
        let m = &ComplexMatrix::unit(dim, a, b) - &ComplexMatrix::unit(dim, b, a);
        Self::new_unchecked(m)
    }

    /// `i (E_ab + E_ba)` (0-based, `a != b`).
    pub fn symmetric_imaginary_unit(dim: usize, a: usize, b: usize) -> Self {
        let m = (&ComplexMatrix::unit(dim, a, b) + &ComplexMatrix::unit(dim, b, a)).scale(I);
        Self::new_unchecked(m)
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    /// Imaginary parts of the diagonal, i.e. `theta` when `X = i diag(theta)`.
    pub fn diagonal_phases(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.inner.get(k, k).im).collect()
    }

    /// Multiply by a real scalar, which preserves skew-Hermitianity.
    pub fn scale(&self, factor: f64) -> Self {
        Self::new_unchecked(self.inner.scale(Complex64::new(factor, 0.0)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new_unchecked(&self.inner + &other.inner)
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        Self::new_unchecked(self.inner.permuted(order))
    }
}

impl fmt::Debug for SkewHermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewHermitian{:?}", self.inner)
    }
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &SkewHermitianMatrix, b: &SkewHermitianMatrix) -> Result<SkewHermitianMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let ab = &a.inner * &b.inner;
    let ba = &b.inner * &a.inner;
    Ok(SkewHermitianMatrix::new_unchecked(&ab - &ba))
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    if a.dim() == 0 || a.is_zero() {
        return 0.0;
    }
    a.inner.singular_values().max()
}

/// Eigen-decomposition of the Hermitian matrix `-i A` for skew-Hermitian `A`.
///
/// Returns real eigenvalues `lambda_k` and the unitary eigenvector matrix `V`
/// with `A = V diag(i lambda) V^dagger`.
pub fn eigenphases(a: &SkewHermitianMatrix) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let h = &a.inner.inner * Complex64::new(0.0, -1.0);
    // Symmetrize so the solver sees an exactly Hermitian input.
    let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, MAX_SOLVER_ITERATIONS)
        .ok_or_else(|| Error::NumericalFailure("Hermitian eigendecomposition did not converge".into()))?;
    Ok((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
}

/// `exp(t A)` through the unitary diagonalization of `-i A`.
pub fn matrix_exp(a: &SkewHermitianMatrix, t: f64) -> Result<ComplexMatrix> {
    if t == 0.0 || a.inner.is_zero() {
        return Ok(ComplexMatrix::identity(a.dim()));
    }
    let (lambda, v) = eigenphases(a)?;
    let phases = DVector::from_iterator(
        lambda.len(),
        lambda.iter().map(|&l| Complex64::from_polar(1.0, t * l)),
    );
    let scaled = DMatrix::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)] * phases[c]);
    ComplexMatrix::from_dmatrix(scaled * v.adjoint())
}

/// Result of [`numerical_rank`].
#[derive(Debug, Clone, PartialEq)]
pub struct RankDecomposition {
    pub rank: usize,
    /// Orthonormal spanning set of the retained subspace.
    pub basis: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
}

/// Rank of a family of real vectors: the number of singular values above
/// `tau_rank * sigma_max`.
pub fn numerical_rank(vectors: &[Vec<f64>], tau_rank: f64) -> Result<RankDecomposition> {
    let Some(first) = vectors.first() else {
        return Ok(RankDecomposition {
            rank: 0,
            basis: Vec::new(),
            singular_values: Vec::new(),
        });
    };
    let len = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    if tau_rank <= 0.0 {
        return Err(Error::InvalidInput("tau_rank must be positive".into()));
    }
    if len == 0 {
        return Ok(RankDecomposition {
            rank: 0,
            basis: Vec::new(),
            singular_values: Vec::new(),
        });
    }
    let m = DMatrix::from_fn(vectors.len(), len, |r, c| vectors[r][c]);
    let svd = m
        .try_svd(false, true, f64::EPSILON, MAX_SOLVER_ITERATIONS)
        .ok_or_else(|| Error::NumericalFailure("SVD did not converge".into()))?;
    let v_t = svd.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let rank = if sigma_max == 0.0 {
        0
    } else {
        singular_values.iter().filter(|&&s| s > tau_rank * sigma_max).count()
    };
    let basis = order[..rank]
        .iter()
        .map(|&k| v_t.row(k).iter().copied().collect())
        .collect();
    Ok(RankDecomposition {
        rank,
        basis,
        singular_values,
    })
}
