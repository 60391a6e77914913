//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

mod common;

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use rand::Rng;
use uqc_core::generators::{
    check_general_direction, generator_epsilon, identity_distance, identity_distance_from_eigenphases,
    make_general_direction,
};
use uqc_core::oracle::compare_with_graph;
use uqc_core::universality::reachable_from;
use uqc_core::{
    build_coupling_graph, check_universality, coordinate_subspace_scan, lie_closure, minimal_pair, repair, Algebra,
    AlgebraKind, BridgeSelection, BridgeStyle, Complex64, ComplexMatrix, GeneratorSet, IndependenceStatus, Phases,
    RawGenerator, SkewHermitianMatrix, Tolerances, UniversalityStatus,
};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn blocks(v: &GeneratorSet, tol: &Tolerances) -> Vec<Vec<usize>> {
    check_universality(v, tol).components.blocks().to_vec()
}

fn u3_golden() -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    let raw = vec![
        RawGenerator::new(
            "X1",
            SkewHermitianMatrix::from_phases(&[2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt()]).into_matrix(),
        ),
        RawGenerator::new("X2", SkewHermitianMatrix::antisymmetric_unit(3, 0, 1).into_matrix()),
    ];
    let set = uqc_core::validate_set(Algebra::u(3), raw, 0, &tol).map_err(|e| e.to_string())?;
    let before = check_universality(&set, &tol);
    ensure(before.status == UniversalityStatus::Reducible, || format!("status {:?}", before.status))?;
    ensure(before.components.blocks() == [vec![0, 1], vec![2]], || {
        format!("components {:?}", before.components)
    })?;

    let plan = repair(&set, BridgeStyle::Antisymmetric, BridgeSelection::LargestInside, &tol).map_err(|e| e.to_string())?;
    ensure(plan.added_generators.len() == 1, || format!("{} bridges", plan.added_generators.len()))?;
    let mut y23 = ComplexMatrix::zeros(3);
    y23.set(1, 2, Complex64::new(1.0, 0.0));
    y23.set(2, 1, Complex64::new(-1.0, 0.0));
    let added = plan.added_generators[0].matrix.matrix();
    ensure(added.max_abs_diff(&y23) == 0.0, || format!("added generator {added:?}"))?;

    let after = check_universality(&plan.resulting_set, &tol);
    ensure(after.status == UniversalityStatus::Universal, || format!("post-repair {:?}", after.status))?;
    let closure = lie_closure(&plan.resulting_set, tol.rank, 9).map_err(|e| e.to_string())?;
    ensure(closure.dimension == 9, || format!("closure dimension {}", closure.dimension))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_millis(100))?;
    Ok(format!("reducible {{1,2}},{{3}}; Y[2,3] added; closure 9 ({elapsed:.2?})"))
}

fn two_qubit_golden() -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    let (w1, w2, j) = (2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt());
    // Basis |00>, |01>, |10>, |11>.
    let z1 = [1.0, 1.0, -1.0, -1.0];
    let z2 = [1.0, -1.0, 1.0, -1.0];
    let h: Vec<f64> = (0..4).map(|k| w1 * z1[k] + w2 * z2[k] + j * z1[k] * z2[k]).collect();
    let theta: Vec<f64> = h.iter().map(|x| -x).collect();
    let algebra = Algebra::su(4);
    let gd = check_general_direction(&Phases(theta.clone()), algebra, tol.relation_bound, tol.relation);
    ensure(gd.status == IndependenceStatus::HeuristicallyIndependent, || format!("drift spectrum {gd:?}"))?;

    let flip = |pairs: [(usize, usize); 2]| {
        let mut m = ComplexMatrix::zeros(4);
        for (a, b) in pairs {
            m.set(a, b, Complex64::new(0.0, -1.0));
            m.set(b, a, Complex64::new(0.0, -1.0));
        }
        m
    };
    let x_first = flip([(0, 2), (1, 3)]);
    let x_second = flip([(0, 1), (2, 3)]);
    let raw = vec![
        RawGenerator::new("drift", SkewHermitianMatrix::from_phases(&theta).into_matrix()),
        RawGenerator::new("XI", x_first),
    ];
    let set = uqc_core::validate_set(algebra, raw, 0, &tol).map_err(|e| e.to_string())?;
    let before = check_universality(&set, &tol);
    ensure(before.status == UniversalityStatus::Reducible, || format!("status {:?}", before.status))?;
    ensure(before.components.blocks() == [vec![0, 2], vec![1, 3]], || {
        format!("components {:?}", before.components)
    })?;

    let (alg, mut raw, gi) = set.into_raw();
    raw.push(RawGenerator::new("IX", x_second));
    let full = uqc_core::validate_set(alg, raw, gi, &tol).map_err(|e| e.to_string())?;
    let after = check_universality(&full, &tol);
    ensure(after.status == UniversalityStatus::Universal, || format!("with IX {:?}", after.status))?;
    let closure = lie_closure(&full, tol.rank, 16).map_err(|e| e.to_string())?;
    ensure(closure.dimension == 15, || format!("closure dimension {}", closure.dimension))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("reducible {{1,3}},{{2,4}}; universal with IX, closure 15 ({elapsed:.2?})"))
}

fn graph_oracle_equivalence() -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut rng = rng(0x5eed_0003);
    let trials = 240;
    let (mut universal, mut failures) = (0, Vec::new());
    for t in 0..trials {
        let algebra = random_algebra(&mut rng, 2..=6);
        let m = rng.gen_range(2..=4);
        let set = sparse_instance(&mut rng, algebra, m, 0.3);
        let verdict = check_universality(&set, &tol);
        let cmp = compare_with_graph(&set, &tol).map_err(|e| e.to_string())?;
        let is_universal = verdict.status == UniversalityStatus::Universal;
        let full = cmp.report.dimension == algebra.target_dimension();
        universal += is_universal as usize;
        if is_universal != full
            || cmp.closure_partition != verdict.components
            || verdict.status == UniversalityStatus::ConditionallyUniversal
        {
            failures.push(format!("trial {t} {algebra}: {:?} closure {}", verdict.status, cmp.report.dimension));
        }
    }
    ensure(failures.is_empty(), || format!("{} disagreements: {:?}", failures.len(), failures))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{trials} instances ({universal} universal), 0 disagreements ({elapsed:.2?})"))
}

fn minimal_pair_suite() -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    for kind in [AlgebraKind::U, AlgebraKind::SU] {
        for d in 2..=8 {
            let algebra = Algebra::new(kind, d).map_err(|e| e.to_string())?;
            let set = minimal_pair(algebra, None).map_err(|e| e.to_string())?;
            let verdict = check_universality(&set, &tol);
            ensure(verdict.status == UniversalityStatus::Universal, || format!("{algebra}: {:?}", verdict.status))?;
            if d <= 6 {
                let report = lie_closure(&set, tol.rank, d * d).map_err(|e| e.to_string())?;
                ensure(report.dimension == algebra.target_dimension(), || {
                    format!("{algebra}: closure {}", report.dimension)
                })?;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("u(d), su(d) for d = 2..8 universal, closure full for d <= 6 ({elapsed:.2?})"))
}

fn epsilon_property() -> Outcome {
    let mut rng = rng(0x5eed_0005);
    let tol = 1e-9;
    let mut worst_below = 0.0f64;
    for t in 0..50 {
        let d = rng.gen_range(1..=8);
        let scale = 10f64.powf(rng.gen_range(-2.0..2.0));
        let traceless = d > 1 && rng.gen_bool(0.5);
        let x = dense_skew(&mut rng, d, traceless).scale(scale);
        let x = SkewHermitianMatrix::new(x.into_matrix(), 1e-12).map_err(|e| e.to_string())?;
        let eps = generator_epsilon(&x);
        let below = identity_distance(&x, 0.99 * eps).map_err(|e| e.to_string())?;
        let above = identity_distance_from_eigenphases(&x, 1.2 * eps).map_err(|e| e.to_string())?;
        ensure(below < SQRT_2 - tol, || format!("trial {t}: distance {below} at 0.99 eps"))?;
        ensure(above >= SQRT_2 - tol, || format!("trial {t}: distance {above} at 1.2 eps"))?;
        worst_below = worst_below.max(below);
    }
    Ok(format!("50 generators; max distance at 0.99 eps = {worst_below:.6} < sqrt(2)"))
}

fn invariance_suite() -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut rng = rng(0x5eed_0006);
    let trials = 120;
    for t in 0..trials {
        let algebra = random_algebra(&mut rng, 2..=6);
        let m = rng.gen_range(2..=4);
        let set = sparse_instance(&mut rng, algebra, m, 0.3);
        let d = algebra.dim;
        let verdict = check_universality(&set, &tol);

        // Permutation equivariance: new vertex i is old vertex order[i].
        let order = permutation(&mut rng, d);
        let permuted = check_universality(&set.permuted(&order), &tol);
        let mut inverse = vec![0; d];
        for (i, &o) in order.iter().enumerate() {
            inverse[o] = i;
        }
        ensure(permuted.status == verdict.status, || format!("trial {t}: permuted status"))?;
        ensure(permuted.components == verdict.components.relabel(&inverse), || {
            format!("trial {t}: permuted components")
        })?;

        // Scaling invariance.
        let j = rng.gen_range(0..set.len());
        let c = rng.gen_range(0.01..100.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let (alg, mut raw, gi) = set.clone().into_raw();
        raw[j].matrix = raw[j].matrix.scale(Complex64::new(c, 0.0));
        let scaled = uqc_core::validate_set(alg, raw, gi, &tol).map_err(|e| e.to_string())?;
        let g0: Vec<_> = build_coupling_graph(&set, &tol).edges().collect();
        let g1: Vec<_> = build_coupling_graph(&scaled, &tol).edges().collect();
        ensure(g0 == g1, || format!("trial {t}: scaled edge set"))?;
        ensure(blocks(&scaled, &tol) == verdict.components.blocks(), || format!("trial {t}: scaled components"))?;
        if j != gi {
            ensure(check_universality(&scaled, &tol).status == verdict.status, || {
                format!("trial {t}: scaled status")
            })?;
        }

        // Start-vertex independence.
        for k in 0..d {
            let reach = reachable_from(&set, k, &tol);
            ensure(Some(reach.as_slice()) == verdict.components.block_of(k), || {
                format!("trial {t}: reach from {k}")
            })?;
        }

        // Coordinate scan equals unions of components.
        let scan = coordinate_subspace_scan(&set, &tol).map_err(|e| e.to_string())?;
        ensure(scan == component_unions(verdict.components.blocks()), || format!("trial {t}: scan {scan:?}"))?;
    }
    let elapsed = start.elapsed();
    Ok(format!("{trials} trials of each property, 0 failures ({elapsed:.2?})"))
}

fn complexity_smoke() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = rng(0x5eed_0007);
    let algebra = Algebra::u(100);
    let mut raw: Vec<RawGenerator> = vec![make_general_direction(algebra).into()];
    for j in 1..10 {
        raw.push(RawGenerator::new(format!("G{}", j + 1), dense_skew(&mut rng, 100, false).into_matrix()));
    }
    let set = uqc_core::validate_set(algebra, raw, 0, &tol).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let verdict = check_universality(&set, &tol);
    let elapsed = start.elapsed();
    ensure(verdict.status == UniversalityStatus::Universal, || format!("status {:?}", verdict.status))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("d = 100, m = 10 dense: universal in {elapsed:.2?}"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("U(3) golden test", u3_golden),
        ("two-qubit golden test", two_qubit_golden),
        ("graph vs closure oracle equivalence", graph_oracle_equivalence),
        ("minimal-pair suite", minimal_pair_suite),
        ("small-step bound", epsilon_property),
        ("invariance suite", invariance_suite),
        ("complexity smoke check", complexity_smoke),
    ];
    let mut failed = Vec::new();
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", n + 1),
            Err(why) => {
                println!("[FAIL] criterion {}: {name}: {why}", n + 1);
                failed.push(n + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
