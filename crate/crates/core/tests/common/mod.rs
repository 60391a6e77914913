#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uqc_core::generators::make_general_direction;
use uqc_core::{
    validate_set, Algebra, AlgebraKind, Complex64, ComplexMatrix, GeneratorSet, RawGenerator, SkewHermitianMatrix,
    Tolerances,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry(rng: &mut impl Rng) -> Complex64 {
    let r = rng.gen_range(0.5..1.5);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, phi)
}

/// Off-diagonal skew-Hermitian matrix, each pair `(r, l)` present with
/// probability `p`.
pub fn sparse_skew(rng: &mut impl Rng, d: usize, p: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d);
    for r in 0..d {
        for l in (r + 1)..d {
            if rng.gen_bool(p) {
                let z = entry(rng);
                m.set(r, l, z);
                m.set(l, r, -z.conj());
            }
        }
    }
    m
}

/// Dense skew-Hermitian matrix; traceless when `traceless`.
pub fn dense_skew(rng: &mut impl Rng, d: usize, traceless: bool) -> SkewHermitianMatrix {
    let mut m = sparse_skew(rng, d, 1.0);
    let mut diag: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if traceless {
        let mean = diag.iter().sum::<f64>() / d as f64;
        diag.iter_mut().for_each(|x| *x -= mean);
    }
    for (k, t) in diag.iter().enumerate() {
        m.set(k, k, Complex64::new(0.0, *t));
    }
    SkewHermitianMatrix::new(m, 1e-12).expect("skew by construction")
}

pub fn random_algebra(rng: &mut impl Rng, dims: std::ops::RangeInclusive<usize>) -> Algebra {
    let d = rng.gen_range(dims);
    let kind = if rng.gen_bool(0.5) { AlgebraKind::U } else { AlgebraKind::SU };
    Algebra::new(kind, d).unwrap()
}

/// Constructed general direction followed by `m - 1` random sparse
/// off-diagonal generators.
pub fn sparse_instance(rng: &mut impl Rng, algebra: Algebra, m: usize, p: f64) -> GeneratorSet {
    let d = algebra.dim;
    let mut raw: Vec<RawGenerator> = vec![make_general_direction(algebra).into()];
    for j in 1..m {
        raw.push(RawGenerator::new(format!("G{}", j + 1), sparse_skew(rng, d, p)));
    }
    validate_set(algebra, raw, 0, &Tolerances::default()).expect("valid instance")
}

pub fn permutation(rng: &mut impl Rng, d: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..d).collect();
    p.shuffle(rng);
    p
}

/// All unions of connected components except the empty and the full set,
/// sorted by size then lexicographically.
pub fn component_unions(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let r = blocks.len();
    let mut out = Vec::new();
    for mask in 1..(1u64 << r) - 1 {
        let mut s: Vec<usize> = (0..r)
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| blocks[i].iter().copied())
            .collect();
        s.sort_unstable();
        out.push(s);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
