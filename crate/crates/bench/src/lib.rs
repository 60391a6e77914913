//! Seeded random generator sets for benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uqc_core::generators::make_general_direction;
use uqc_core::{validate_set, Algebra, Complex64, ComplexMatrix, GeneratorSet, RawGenerator, Tolerances};

/// Off-diagonal skew-Hermitian matrix with each pair present with
/// probability `density`.
pub fn random_off_diagonal(rng: &mut impl Rng, d: usize, density: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d);
    for r in 0..d {
        for l in (r + 1)..d {
            if rng.gen_bool(density) {
                let z = Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
                m.set(r, l, z);
                m.set(l, r, -z.conj());
            }
        }
    }
    m
}

/// Constructed general direction plus `m - 1` random generators.
pub fn random_set(seed: u64, algebra: Algebra, m: usize, density: f64) -> GeneratorSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw: Vec<RawGenerator> = vec![make_general_direction(algebra).into()];
    for j in 1..m {
        raw.push(RawGenerator::new(
            format!("G{}", j + 1),
            random_off_diagonal(&mut rng, algebra.dim, density),
        ));
    }
    validate_set(algebra, raw, 0, &Tolerances::default()).expect("random sets are valid")
}
