//! JSON input and output documents.
//!
//! Complex entries are `[re, im]` pairs. Basis indices in every document are
//! 1-based; `general_index` is a 0-based position in the generator list.

use serde::{Deserialize, Serialize};
use uqc_core::{
    Algebra, AlgebraKind, Complex64, ComplexMatrix, EdgeThreshold, GeneratorSet, IndependenceStatus, Partition,
    RawGenerator, SpectrumIndependenceVerdict, Tolerances, UniversalityVerdict,
};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraName {
    U,
    Su,
}

impl From<AlgebraName> for AlgebraKind {
    fn from(a: AlgebraName) -> Self {
        match a {
            AlgebraName::U => AlgebraKind::U,
            AlgebraName::Su => AlgebraKind::SU,
        }
    }
}

impl From<AlgebraKind> for AlgebraName {
    fn from(a: AlgebraKind) -> Self {
        match a {
            AlgebraKind::U => AlgebraName::U,
            AlgebraKind::SU => AlgebraName::Su,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub label: String,
    /// Rows of `[re, im]` pairs.
    pub matrix: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_edge: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_rank: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation_bound: Option<u32>,
    /// `"relative"` (default) or `"absolute"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_mode: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub algebra: AlgebraName,
    pub dimension: usize,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub general_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

impl GeneratorEntry {
    pub fn from_matrix(label: &str, m: &ComplexMatrix) -> Self {
        let d = m.dim();
        Self {
            label: label.to_string(),
            matrix: (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| {
                            let z = m.get(r, c);
                            vec![z.re, z.im]
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn to_matrix(&self, index: usize, dim: usize) -> Result<ComplexMatrix, CliError> {
        let at = |detail: String| {
            CliError::Input(format!(
                "generators[{index}] (label '{}'): {detail}",
                self.label
            ))
        };
        if self.matrix.len() != dim {
            return Err(at(format!("matrix has {} rows, expected {dim}", self.matrix.len())));
        }
        let mut rows = Vec::with_capacity(dim);
        for (r, row) in self.matrix.iter().enumerate() {
            if row.len() != dim {
                return Err(at(format!("row {} has {} entries, expected {dim}", r + 1, row.len())));
            }
            let mut out = Vec::with_capacity(dim);
            for (c, z) in row.iter().enumerate() {
                match z.as_slice() {
                    [re, im] if re.is_finite() && im.is_finite() => out.push(Complex64::new(*re, *im)),
                    [_, _] => return Err(at(format!("entry ({}, {}) is not finite", r + 1, c + 1))),
                    _ => {
                        return Err(at(format!(
                            "entry ({}, {}) must be an [re, im] pair, found {} numbers",
                            r + 1,
                            c + 1,
                            z.len()
                        )))
                    }
                }
            }
            rows.push(out);
        }
        ComplexMatrix::from_rows(&rows).map_err(|e| at(e.to_string()))
    }
}

/// Parsed, not yet validated, contents of an input document.
#[derive(Debug, Clone)]
pub struct ParsedInput {
    pub algebra: Algebra,
    pub generators: Vec<RawGenerator>,
    pub general_index: usize,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed input document: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn parse(&self) -> Result<ParsedInput, CliError> {
        let algebra = Algebra::new(self.algebra.into(), self.dimension)
            .map_err(|e| CliError::Input(format!("dimension: {e}")))?;
        if self.generators.is_empty() {
            return Err(CliError::Input("generators: list is empty".into()));
        }
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| Ok(RawGenerator::new(g.label.clone(), g.to_matrix(i, self.dimension)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(ParsedInput {
            algebra,
            generators,
            general_index: self.general_index.unwrap_or(0),
        })
    }

    /// Apply the document's tolerance overrides on top of `base`.
    pub fn tolerances(&self, base: Tolerances) -> Result<Tolerances, CliError> {
        let mut tol = base;
        let Some(o) = &self.tolerances else {
            return Ok(tol);
        };
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::Input(format!("tolerances.{name} must be a positive number")))
            }
        };
        if let Some(v) = o.tau_edge {
            tol.edge = positive("tau_edge", v)?;
        }
        if let Some(v) = o.tau_rank {
            tol.rank = positive("tau_rank", v)?;
        }
        if let Some(v) = o.tau_rel {
            tol.relation = positive("tau_rel", v)?;
        }
        if let Some(v) = o.relation_bound {
            if v == 0 {
                return Err(CliError::Input("tolerances.relation_bound must be at least 1".into()));
            }
            tol.relation_bound = v;
        }
        if let Some(mode) = &o.edge_mode {
            tol.edge_mode = match mode.as_str() {
                "relative" => EdgeThreshold::Relative,
                "absolute" => EdgeThreshold::Absolute,
                other => {
                    return Err(CliError::Input(format!(
                        "tolerances.edge_mode must be 'relative' or 'absolute', found '{other}'"
                    )))
                }
            };
        }
        Ok(tol)
    }

    pub fn from_set(set: &GeneratorSet, tolerances: Option<ToleranceOverrides>) -> Self {
        Self {
            algebra: set.algebra().kind.into(),
            dimension: set.dim(),
            generators: set
                .generators()
                .iter()
                .map(|g| GeneratorEntry::from_matrix(&g.label, g.matrix.matrix()))
                .collect(),
            general_index: Some(set.general_index()),
            tolerances,
        }
    }
}

pub fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

pub fn one_based_blocks(p: &Partition) -> Vec<Vec<usize>> {
    p.blocks().iter().map(|b| one_based(b)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralDirectionDoc {
    pub status: &'static str,
    pub relation: Option<Vec<i64>>,
    pub residual: f64,
    pub search_bound: u32,
}

impl From<&SpectrumIndependenceVerdict> for GeneralDirectionDoc {
    fn from(v: &SpectrumIndependenceVerdict) -> Self {
        Self {
            status: match v.status {
                IndependenceStatus::HeuristicallyIndependent => "heuristically_independent",
                IndependenceStatus::Dependent => "dependent",
                IndependenceStatus::ConstructedExact => "constructed_exact",
            },
            relation: v.relation.clone(),
            residual: v.residual,
            search_bound: v.search_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleDoc {
    pub dimension: usize,
    pub target_dimension: usize,
    /// Dimension a universal set should reach (`d^2 - 1` for traceless u(d) inputs).
    pub expected_dimension: usize,
    pub agrees: bool,
    pub closure_components: Vec<Vec<usize>>,
    pub rounds: usize,
    pub residual_max: f64,
    pub trace_deficient: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BridgeDoc {
    pub a: usize,
    pub b: usize,
    pub style: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepairDoc {
    pub bridges: Vec<BridgeDoc>,
    pub added_generators: Vec<GeneratorEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictDocument {
    pub status: &'static str,
    pub algebra: AlgebraName,
    pub dimension: usize,
    pub components: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
    pub permutation: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_subspace: Option<Vec<usize>>,
    pub general_direction: GeneralDirectionDoc,
    pub epsilon_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repair: Option<RepairDoc>,
}

impl VerdictDocument {
    pub fn new(set: &GeneratorSet, verdict: &UniversalityVerdict, epsilon_max: Option<f64>) -> Self {
        Self {
            status: verdict.status.as_str(),
            algebra: set.algebra().kind.into(),
            dimension: set.dim(),
            components: one_based_blocks(&verdict.components),
            block_sizes: verdict.block_sizes.clone(),
            permutation: one_based(&verdict.permutation),
            witness_subspace: verdict.witness_subspace.as_deref().map(one_based),
            general_direction: (&verdict.general_direction).into(),
            epsilon_max,
            oracle: None,
            repair: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonEntry {
    pub label: String,
    pub operator_norm: f64,
    /// `null` for a zero generator.
    pub epsilon_max: Option<f64>,
    /// `||exp(0.99 eps_max X) - I||_op`, measured.
    pub distance_at_0_99: Option<f64>,
    pub below_sqrt2: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonDocument {
    pub generators: Vec<EpsilonEntry>,
    pub epsilon_max: f64,
    pub sqrt2: f64,
    pub all_below_sqrt2: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureDocument {
    pub algebra: AlgebraName,
    pub dimension: usize,
    pub closure_dimension: usize,
    pub target_dimension: usize,
    pub expected_dimension: usize,
    pub rounds: usize,
    pub residual_max: f64,
    pub trace_deficient: bool,
    pub closure_components: Vec<Vec<usize>>,
    pub graph_components: Vec<Vec<usize>>,
    pub agrees: bool,
}
