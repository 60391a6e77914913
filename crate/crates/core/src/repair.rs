//! Repairing reducible sets with bridging generators, and the two-generator
//! universal construction.

use crate::error::{Error, Result};
use crate::generators::{make_general_direction, validate_set, Algebra, Generator, GeneratorSet, RawGenerator};
use crate::linalg::SkewHermitianMatrix;
use crate::tolerance::Tolerances;
use crate::universality::build_coupling_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BridgeStyle {
    /// `E_ab - E_ba`
    #[default]
    Antisymmetric,
    /// `i (E_ab + E_ba)`
    SymmetricImaginary,
}

impl BridgeStyle {
    pub fn unit(self, dim: usize, a: usize, b: usize) -> SkewHermitianMatrix {
        match self {
            BridgeStyle::Antisymmetric => SkewHermitianMatrix::antisymmetric_unit(dim, a, b),
            BridgeStyle::SymmetricImaginary => SkewHermitianMatrix::symmetric_imaginary_unit(dim, a, b),
        }
    }

    fn label_prefix(self) -> &'static str {
        match self {
            BridgeStyle::Antisymmetric => "Y",
            BridgeStyle::SymmetricImaginary => "Ysym",
        }
    }
}

/// How the inside endpoint `a` of each bridge is chosen. The outside
/// endpoint `b` is always the smallest index not yet reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BridgeSelection {
    /// Smallest index in the current component.
    #[default]
    SmallestInside,
    /// Largest index in the current component; reproduces `Y_23` on the
    /// three-level example with components `{1,2}, {3}`.
    LargestInside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bridge {
    /// 0-based indices.
    pub a: usize,
    pub b: usize,
    pub style: BridgeStyle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepairPlan {
    pub bridges: Vec<Bridge>,
    pub added_generators: Vec<Generator>,
    pub resulting_set: GeneratorSet,
}

/// Join the coupling-graph components of `set` into one, starting from the
/// component of vertex 0 and adding one bridge per missing component.
///
/// Returns [`Error::EmptyPlan`] when the graph is already connected.
pub fn repair(
    set: &GeneratorSet,
    style: BridgeStyle,
    selection: BridgeSelection,
    tol: &Tolerances,
) -> Result<RepairPlan> {
    let d = set.dim();
    let partition = build_coupling_graph(set, tol).partition();
    if partition.len() <= 1 {
        return Err(Error::EmptyPlan);
    }
    let mut component_of = vec![0usize; d];
    for (c, block) in partition.blocks().iter().enumerate() {
        for &v in block {
            component_of[v] = c;
        }
    }

    let mut reached = vec![false; d];
    for &v in partition.block_of(0).expect("vertex 0 exists") {
        reached[v] = true;
    }
    let mut bridges = Vec::with_capacity(partition.len() - 1);
    let mut added = Vec::with_capacity(partition.len() - 1);
    let mut resulting = set.clone();
    while let Some(b) = (0..d).find(|&v| !reached[v]) {
        let mut inside = (0..d).filter(|&v| reached[v]);
        let a = match selection {
            BridgeSelection::SmallestInside => inside.next(),
            BridgeSelection::LargestInside => inside.next_back(),
        }
        .expect("current component is nonempty");
        let generator = Generator::new(
            format!("{}[{},{}]", style.label_prefix(), a + 1, b + 1),
            style.unit(d, a, b),
        );
        resulting = resulting.with_generator(generator.clone())?;
        bridges.push(Bridge { a, b, style });
        added.push(generator);
        let joined = component_of[b];
        for v in 0..d {
            if component_of[v] == joined {
                reached[v] = true;
            }
        }
    }
    Ok(RepairPlan {
        bridges,
        added_generators: added,
        resulting_set: resulting,
    })
}

fn chain_coefficients(algebra: Algebra, coefficients: Option<&[f64]>) -> Result<Vec<f64>> {
    let d = algebra.dim;
    let coeffs = match coefficients {
        Some(c) => c.to_vec(),
        None => vec![1.0; d.saturating_sub(1)],
    };
    if coeffs.len() != d.saturating_sub(1) {
        return Err(Error::InvalidInput(format!(
            "chain needs {} coefficients for dimension {d}, got {}",
            d.saturating_sub(1),
            coeffs.len()
        )));
    }
    if let Some(j) = coeffs.iter().position(|c| *c == 0.0 || !c.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "chain coefficient c_{} must be a nonzero finite real",
            j + 1
        )));
    }
    Ok(coeffs)
}

/// Nearest-neighbour chain `sum_j c_j U(j, j+1)` where `U` is the bridge
/// unit of the given style.
pub fn chain(algebra: Algebra, coefficients: Option<&[f64]>, style: BridgeStyle) -> Result<Generator> {
    let d = algebra.dim;
    let coeffs = chain_coefficients(algebra, coefficients)?;
    let mut x = SkewHermitianMatrix::zeros(d);
    for (j, c) in coeffs.iter().enumerate() {
        x = x.add(&style.unit(d, j, j + 1).scale(*c));
    }
    let label = match style {
        BridgeStyle::Antisymmetric => "X2",
        BridgeStyle::SymmetricImaginary => "X2sym",
    };
    Ok(Generator::new(label, x))
}

/// `i sum_j c_j (E_{j,j+1} + E_{j+1,j})`.
pub fn symmetric_chain(algebra: Algebra, coefficients: Option<&[f64]>) -> Result<Generator> {
    chain(algebra, coefficients, BridgeStyle::SymmetricImaginary)
}

/// Built-in general direction plus the antisymmetric nearest-neighbour chain.
pub fn minimal_pair(algebra: Algebra, coefficients: Option<&[f64]>) -> Result<GeneratorSet> {
    minimal_pair_with_style(algebra, coefficients, BridgeStyle::Antisymmetric)
}

/// As [`minimal_pair`], with a choice of chain style. For `d = 1` the set is
/// the single diagonal direction.
pub fn minimal_pair_with_style(
    algebra: Algebra,
    coefficients: Option<&[f64]>,
    style: BridgeStyle,
) -> Result<GeneratorSet> {
    let mut raw: Vec<RawGenerator> = vec![make_general_direction(algebra).into()];
    if algebra.dim > 1 {
        raw.push(chain(algebra, coefficients, style)?.into());
    } else {
        chain_coefficients(algebra, coefficients)?;
    }
    validate_set(algebra, raw, 0, &Tolerances::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::diagonal_generator;
    use crate::linalg::ComplexMatrix;
    use crate::universality::{check_universality, UniversalityStatus};

    fn u3_pre_repair() -> GeneratorSet {
        let raw = vec![
            diagonal_generator("X1", &[2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt()]).into(),
            RawGenerator::new("X2", SkewHermitianMatrix::antisymmetric_unit(3, 0, 1).into_matrix()),
        ];
        validate_set(Algebra::u(3), raw, 0, &Tolerances::default()).unwrap()
    }

    #[test]
    fn u3_repair_default_and_example_selection() {
        let tol = Tolerances::default();
        let set = u3_pre_repair();
        let plan = repair(&set, BridgeStyle::Antisymmetric, BridgeSelection::SmallestInside, &tol).unwrap();
        assert_eq!(plan.bridges, vec![Bridge { a: 0, b: 2, style: BridgeStyle::Antisymmetric }]);
        assert_eq!(check_universality(&plan.resulting_set, &tol).status, UniversalityStatus::Universal);

        let plan = repair(&set, BridgeStyle::Antisymmetric, BridgeSelection::LargestInside, &tol).unwrap();
        assert_eq!(plan.bridges[0].a, 1);
        assert_eq!(plan.bridges[0].b, 2);
        let y23 = &ComplexMatrix::unit(3, 1, 2) - &ComplexMatrix::unit(3, 2, 1);
        assert_eq!(plan.added_generators[0].matrix.matrix(), &y23);
        assert_eq!(plan.added_generators[0].label, "Y[2,3]");
    }

    #[test]
    fn diagonal_only_needs_spanning_tree() {
        let tol = Tolerances::default();
        let raw = vec![diagonal_generator("X1", &[1.0, 2.0, 4.0, 8.5]).into()];
        let set = validate_set(Algebra::u(4), raw, 0, &tol).unwrap();
        for style in [BridgeStyle::Antisymmetric, BridgeStyle::SymmetricImaginary] {
            let plan = repair(&set, style, BridgeSelection::SmallestInside, &tol).unwrap();
            assert_eq!(plan.bridges.len(), 3);
            assert_eq!(
                plan.bridges.iter().map(|b| (b.a, b.b)).collect::<Vec<_>>(),
                vec![(0, 1), (0, 2), (0, 3)]
            );
            let v = check_universality(&plan.resulting_set, &tol);
            assert_eq!(v.components.len(), 1);
        }
    }

    #[test]
    fn connected_set_gives_empty_plan() {
        let set = minimal_pair(Algebra::u(3), None).unwrap();
        let err = repair(&set, BridgeStyle::Antisymmetric, BridgeSelection::SmallestInside, &Tolerances::default());
        assert_eq!(err.unwrap_err(), Error::EmptyPlan);
    }

    #[test]
    fn minimal_pair_u3() {
        let set = minimal_pair(Algebra::u(3), Some(&[1.0, 1.0])).unwrap();
        let x2 = &set.generators()[1].matrix;
        let expected = SkewHermitianMatrix::antisymmetric_unit(3, 0, 1).add(&SkewHermitianMatrix::antisymmetric_unit(3, 1, 2));
        assert_eq!(x2, &expected);
        assert_eq!(
            set.generators()[0].matrix.diagonal_phases(),
            vec![2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt()]
        );
        assert_eq!(check_universality(&set, &Tolerances::default()).status, UniversalityStatus::Universal);
    }

    #[test]
    fn minimal_pair_d1_and_bad_coefficients() {
        let set = minimal_pair(Algebra::u(1), None).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(check_universality(&set, &Tolerances::default()).status, UniversalityStatus::Universal);
        assert!(matches!(
            minimal_pair(Algebra::u(3), Some(&[1.0, 0.0])),
            Err(Error::InvalidInput(_))
        ));
        assert!(minimal_pair(Algebra::u(3), Some(&[1.0])).is_err());
    }

    #[test]
    fn symmetric_chain_matches_edges() {
        let tol = Tolerances::default();
        let sym = symmetric_chain(Algebra::u(3), Some(&[1.0, 1.0])).unwrap();
        let i = crate::linalg::I;
        let expected = (&(&ComplexMatrix::unit(3, 0, 1) + &ComplexMatrix::unit(3, 1, 0))
            + &(&ComplexMatrix::unit(3, 1, 2) + &ComplexMatrix::unit(3, 2, 1)))
            .scale(i);
        assert_eq!(sym.matrix.matrix(), &expected);

        let d2 = symmetric_chain(Algebra::u(2), Some(&[1.0])).unwrap();
        assert_eq!(d2.matrix.matrix().get(0, 1), i);
        assert_eq!(d2.matrix.matrix().get(1, 0), i);

        for d in 2..7 {
            let a = minimal_pair_with_style(Algebra::u(d), None, BridgeStyle::Antisymmetric).unwrap();
            let s = minimal_pair_with_style(Algebra::u(d), None, BridgeStyle::SymmetricImaginary).unwrap();
            let ea: Vec<_> = build_coupling_graph(&a, &tol).edges().collect();
            let es: Vec<_> = build_coupling_graph(&s, &tol).edges().collect();
            assert_eq!(ea, es);
            assert_eq!(ea, (0..d - 1).map(|j| (j, j + 1)).collect::<Vec<_>>());
        }
    }
}
