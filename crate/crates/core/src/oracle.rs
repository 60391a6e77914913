//! Brute-force cross-checks for the graph criterion.
//!
//! [`lie_closure`] computes the real Lie algebra generated by a set by
//! iterated commutators with incremental Gram-Schmidt rank tracking.
//! [`coordinate_subspace_scan`] enumerates every coordinate subspace and
//! tests invariance directly. Neither uses the coupling graph.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::{AlgebraKind, GeneratorSet};
use crate::linalg::{commutator, ComplexMatrix, SkewHermitianMatrix};
use crate::tolerance::Tolerances;
use crate::universality::{build_coupling_graph, partition_of_matrices, Partition};

/// Largest dimension accepted by [`coordinate_subspace_scan`].
pub const MAX_SCAN_DIM: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct LieClosureReport {
    pub dim: usize,
    /// Orthonormal basis of the closure in the `2 d^2` real embedding.
    pub basis: Vec<Vec<f64>>,
    pub dimension: usize,
    pub target_dimension: usize,
    /// Number of commutator generations processed.
    pub rounds: usize,
    /// Largest residual of any rejected commutator against the basis at the
    /// time it was tested; bounds its residual against the final basis.
    pub residual_max: f64,
    /// u(d) mode with every generator traceless: the closure cannot contain
    /// the identity direction and tops out at `d^2 - 1`.
    pub trace_deficient: bool,
}

impl LieClosureReport {
    /// Dimension a universal set is expected to reach.
    pub fn full_dimension(&self) -> usize {
        if self.trace_deficient {
            self.target_dimension - 1
        } else {
            self.target_dimension
        }
    }

    pub fn is_full(&self) -> bool {
        self.dimension >= self.full_dimension()
    }

    pub fn basis_matrices(&self) -> Vec<ComplexMatrix> {
        self.basis
            .iter()
            .map(|v| ComplexMatrix::from_embedding(self.dim, v).expect("embedding length matches dim"))
            .collect()
    }
}

struct Span {
    vectors: Vec<Vec<f64>>,
    matrices: Vec<SkewHermitianMatrix>,
    traceless: bool,
}

impl Span {
    /// Orthogonalize `v` (assumed of unit scale) against the span twice.
    /// Accepts it when the residual norm exceeds `tau`; returns the residual.
    fn try_insert(&mut self, dim: usize, mut v: Vec<f64>, tau: f64) -> (bool, f64) {
        for _ in 0..2 {
            for b in &self.vectors {
                let proj: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                if proj != 0.0 {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
                }
            }
        }
        let v = self.project(dim, &v);
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r <= tau {
            return (false, r);
        }
        let v: Vec<f64> = v.iter().map(|x| x / r).collect();
        let m = ComplexMatrix::from_embedding(dim, &v).expect("embedding length matches dim");
        self.matrices.push(SkewHermitianMatrix::new_unchecked(m));
        self.vectors.push(v);
        (true, r)
    }

    /// Skew-Hermitian part, made traceless when the closure cannot contain
    /// the identity direction.
    fn project(&self, dim: usize, v: &[f64]) -> Vec<f64> {
        let m = ComplexMatrix::from_embedding(dim, v).expect("embedding length matches dim");
        let mut p = (&m - &m.adjoint()).scale(Complex64::new(0.5, 0.0));
        if self.traceless {
            let shift = p.trace() / dim as f64;
            for k in 0..dim {
                p.set(k, k, p.get(k, k) - shift);
            }
        }
        p.embed()
    }
}

/// Real Lie algebra generated by the set.
///
/// Generators are normalized to unit Frobenius norm and orthonormalized;
/// then every element taken from a FIFO queue is commuted against the whole
/// current basis and rank-increasing results are appended. A candidate is
/// rank-increasing when its residual exceeds `tau_rank` (candidates are
/// commutators of unit vectors, so this threshold is relative to unit scale).
pub fn lie_closure(set: &GeneratorSet, tau_rank: f64, max_dim_guard: usize) -> Result<LieClosureReport> {
    let d = set.dim();
    let algebra = set.algebra();
    if max_dim_guard < d * d {
        return Err(Error::InvalidInput(format!(
            "max_dim_guard {max_dim_guard} is below d^2 = {}",
            d * d
        )));
    }
    let trace_deficient = algebra.kind == AlgebraKind::U
        && set
            .generators()
            .iter()
            .all(|g| g.matrix.matrix().trace().norm() <= 1e-12 * d as f64 * g.matrix.matrix().max_abs().max(f64::MIN_POSITIVE));
    let ceiling = if trace_deficient || algebra.kind == AlgebraKind::SU {
        d * d - 1
    } else {
        d * d
    };

    let mut span = Span {
        vectors: Vec::new(),
        matrices: Vec::new(),
        traceless: ceiling < d * d,
    };
    let mut generation: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    let mut residual_max = 0.0f64;

    for g in set.generators() {
        let norm = g.matrix.matrix().frobenius_norm();
        if norm == 0.0 {
            continue;
        }
        let v: Vec<f64> = g.matrix.matrix().embed().iter().map(|x| x / norm).collect();
        let (accepted, r) = span.try_insert(d, v, tau_rank);
        if accepted {
            queue.push_back(span.vectors.len() - 1);
            generation.push(0);
        } else {
            residual_max = residual_max.max(r);
        }
    }

    let mut rounds = 0;
    'sweep: while let Some(i) = queue.pop_front() {
        if span.vectors.len() >= ceiling {
            break;
        }
        rounds = rounds.max(generation[i] + 1);
        let mut j = 0;
        while j < span.vectors.len() {
            if j != i {
                let c = commutator(&span.matrices[i], &span.matrices[j])?;
                if !c.matrix().is_zero() {
                    let (accepted, r) = span.try_insert(d, c.matrix().embed(), tau_rank);
                    if accepted {
                        queue.push_back(span.vectors.len() - 1);
                        generation.push(generation[i] + 1);
                        if span.vectors.len() > max_dim_guard {
                            return Err(Error::NumericalFailure(format!(
                                "closure dimension exceeded guard {max_dim_guard}; rank tolerance {tau_rank:e} is too small"
                            )));
                        }
                        if span.vectors.len() >= ceiling {
                            break 'sweep;
                        }
                    } else {
                        residual_max = residual_max.max(r);
                    }
                }
            }
            j += 1;
        }
    }

    Ok(LieClosureReport {
        dim: d,
        dimension: span.vectors.len(),
        basis: span.vectors,
        target_dimension: algebra.target_dimension(),
        rounds,
        residual_max,
        trace_deficient,
    })
}

/// Largest norm of the component of `[B_i, B_j]` orthogonal to the basis,
/// over all basis pairs. Quadratic in the closure dimension.
pub fn closure_defect(report: &LieClosureReport) -> f64 {
    let mats: Vec<SkewHermitianMatrix> = report
        .basis_matrices()
        .into_iter()
        .map(SkewHermitianMatrix::new_unchecked)
        .collect();
    let mut worst = 0.0f64;
    for i in 0..mats.len() {
        for j in (i + 1)..mats.len() {
            let mut v = commutator(&mats[i], &mats[j]).expect("same dim").matrix().embed();
            for b in &report.basis {
                let p: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
            }
            worst = worst.max(v.iter().map(|x| x * x).sum::<f64>().sqrt());
        }
    }
    worst
}

/// Coupling-graph partition of the closure basis, treating every basis
/// element as an off-diagonal generator.
pub fn closure_block_partition(report: &LieClosureReport, tol: &Tolerances) -> Partition {
    let mats = report.basis_matrices();
    partition_of_matrices(report.dim, mats.iter(), tol)
}

/// Every nontrivial proper index set `S` (0-based, sorted by size then
/// lexicographically) such that all generators map `span{e_k : k in S}`
/// into itself.
pub fn coordinate_subspace_scan(set: &GeneratorSet, tol: &Tolerances) -> Result<Vec<Vec<usize>>> {
    let d = set.dim();
    if d > MAX_SCAN_DIM {
        return Err(Error::InvalidInput(format!(
            "coordinate subspace scan enumerates 2^d subsets and is limited to d <= {MAX_SCAN_DIM}; \
             use the coupling-graph check for d = {d}"
        )));
    }
    // reach[c]: rows hit by column c of any generator
    let mut reach = vec![0u32; d];
    for g in set.generators() {
        let m = g.matrix.matrix();
        let cutoff = tol.edge_cutoff(m.max_abs());
        for (c, mask) in reach.iter_mut().enumerate() {
            for r in 0..d {
                if r != c && m.get(r, c).norm() > cutoff {
                    *mask |= 1 << r;
                }
            }
        }
    }
    let full: u32 = if d == 32 { u32::MAX } else { (1u32 << d) - 1 };
    let mut found = Vec::new();
    for s in 1..full {
        let invariant = (0..d)
            .filter(|&c| s & (1 << c) != 0)
            .all(|c| reach[c] & !s == 0);
        if invariant {
            found.push((0..d).filter(|&k| s & (1 << k) != 0).collect::<Vec<usize>>());
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// Side-by-side comparison of the graph criterion and the closure oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub report: LieClosureReport,
    pub graph_partition: Partition,
    pub closure_partition: Partition,
    /// Connected graph iff full closure, and identical partitions.
    pub agrees: bool,
}

pub fn compare_with_graph(set: &GeneratorSet, tol: &Tolerances) -> Result<OracleComparison> {
    let d = set.dim();
    let report = lie_closure(set, tol.rank, d * d)?;
    let graph_partition = build_coupling_graph(set, tol).partition();
    let closure_partition = closure_block_partition(&report, tol);
    let connected = graph_partition.len() == 1;
    let agrees = connected == report.is_full() && graph_partition == closure_partition;
    Ok(OracleComparison {
        report,
        graph_partition,
        closure_partition,
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{diagonal_generator, validate_set, Algebra, RawGenerator};
    use crate::linalg::I;
    use crate::repair::minimal_pair;

    fn u3(with_bridge: bool) -> GeneratorSet {
        let mut raw = vec![
            diagonal_generator("X1", &[2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt()]).into(),
            RawGenerator::new("X2", SkewHermitianMatrix::antisymmetric_unit(3, 0, 1).into_matrix()),
        ];
        if with_bridge {
            raw.push(RawGenerator::new(
                "Y23",
                SkewHermitianMatrix::antisymmetric_unit(3, 1, 2).into_matrix(),
            ));
        }
        validate_set(Algebra::u(3), raw, 0, &Tolerances::default()).unwrap()
    }

    /// Rank of a hand-picked spanning set, for comparison with the closure.
    fn rank_of(mats: &[ComplexMatrix]) -> usize {
        let v: Vec<Vec<f64>> = mats.iter().map(ComplexMatrix::embed).collect();
        crate::linalg::numerical_rank(&v, 1e-10).unwrap().rank
    }

    #[test]
    fn u3_pre_repair_closure_is_four_dimensional() {
        let set = u3(false);
        let report = lie_closure(&set, 1e-10, 9).unwrap();
        assert_eq!(report.dimension, 4);
        assert_eq!(report.target_dimension, 9);
        assert!(closure_defect(&report) < 1e-9);

        // span{E12 - E21, i(E12 + E21), i(E11 - E22), X1}
        let expected = [
            SkewHermitianMatrix::antisymmetric_unit(3, 0, 1).into_matrix(),
            SkewHermitianMatrix::symmetric_imaginary_unit(3, 0, 1).into_matrix(),
            ComplexMatrix::diagonal(&[I, -I, 0.0 * I]),
            set.generators()[0].matrix.matrix().clone(),
        ];
        assert_eq!(rank_of(&expected), 4);
        let mut joint = expected.to_vec();
        joint.extend(report.basis_matrices());
        assert_eq!(rank_of(&joint), 4);

        assert_eq!(closure_block_partition(&report, &Tolerances::default()).blocks(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn u3_post_repair_closure_is_u3() {
        let report = lie_closure(&u3(true), 1e-10, 9).unwrap();
        assert_eq!(report.dimension, 9);
        assert!(report.is_full());
        assert_eq!(closure_block_partition(&report, &Tolerances::default()).len(), 1);
    }

    #[test]
    fn diagonal_only_closure() {
        let raw = vec![diagonal_generator("X1", &[1.0, 2.0, 4.0]).into()];
        let set = validate_set(Algebra::u(3), raw, 0, &Tolerances::default()).unwrap();
        let report = lie_closure(&set, 1e-10, 9).unwrap();
        assert_eq!(report.dimension, 1);
        assert_eq!(closure_block_partition(&report, &Tolerances::default()), Partition::singletons(3));
    }

    #[test]
    fn su4_minimal_pair_is_fifteen_dimensional() {
        let set = minimal_pair(Algebra::su(4), Some(&[2.0, -1.0, 0.5])).unwrap();
        let report = lie_closure(&set, 1e-10, 16).unwrap();
        assert_eq!(report.dimension, 15);
        assert_eq!(report.target_dimension, 15);
    }

    #[test]
    fn guard_below_d_squared_is_rejected() {
        assert!(matches!(lie_closure(&u3(false), 1e-10, 4), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn traceless_u_mode_is_flagged() {
        let raw = vec![
            diagonal_generator("X1", &[1.0, -0.25, -0.75]).into(),
            RawGenerator::new(
                "chain",
                SkewHermitianMatrix::antisymmetric_unit(3, 0, 1)
                    .add(&SkewHermitianMatrix::antisymmetric_unit(3, 1, 2))
                    .into_matrix(),
            ),
        ];
        let set = validate_set(Algebra::u(3), raw, 0, &Tolerances::default()).unwrap();
        let report = lie_closure(&set, 1e-10, 9).unwrap();
        assert!(report.trace_deficient);
        assert_eq!(report.dimension, 8);
        assert!(report.is_full());
    }

    #[test]
    fn scan_examples() {
        let tol = Tolerances::default();
        assert_eq!(coordinate_subspace_scan(&u3(false), &tol).unwrap(), vec![vec![2], vec![0, 1]]);
        assert!(coordinate_subspace_scan(&u3(true), &tol).unwrap().is_empty());
    }

    #[test]
    fn scan_rejects_large_dimension() {
        let set = minimal_pair(Algebra::u(21), None).unwrap();
        let err = coordinate_subspace_scan(&set, &Tolerances::default()).unwrap_err();
        assert!(err.to_string().contains("coupling-graph"));
    }
}
