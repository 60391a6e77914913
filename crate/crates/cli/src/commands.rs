use std::fs;
use std::path::{Path, PathBuf};

use uqc_core::generators::{epsilon_bound, generator_epsilon, identity_distance};
use uqc_core::oracle::compare_with_graph;
use uqc_core::repair::minimal_pair_with_style;
use uqc_core::{
    build_coupling_graph, check_universality, validate_set, Algebra, AlgebraKind, BridgeSelection, BridgeStyle,
    Error as CoreError, GeneratorSet, ToleranceProfile, Tolerances,
};

use crate::document::{
    one_based_blocks, BridgeDoc, ClosureDocument, EpsilonDocument, EpsilonEntry, GeneratorEntry, InputDocument,
    OracleDoc, RepairDoc, VerdictDocument,
};
use crate::text::render_verdict;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Defaults, adjusted by an optional tolerance profile name (normally the
/// value of `UQC_TOLERANCE_PROFILE`).
pub fn base_tolerances(profile: Option<&str>) -> Result<Tolerances, CliError> {
    match profile {
        None => Ok(Tolerances::default()),
        Some(p) => {
            let profile: ToleranceProfile = p
                .parse()
                .map_err(|e: CoreError| CliError::Input(format!("{}: {e}", crate::PROFILE_ENV)))?;
            Ok(Tolerances::with_profile(profile))
        }
    }
}

struct Loaded {
    doc: InputDocument,
    set: GeneratorSet,
    tol: Tolerances,
}

fn load(path: &Path, base: &Tolerances, tau_edge: Option<f64>) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let doc = InputDocument::from_json(&text)?;
    let mut tol = doc.tolerances(base.clone())?;
    if let Some(t) = tau_edge {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Input("--tau-edge must be a positive number".into()));
        }
        tol.edge = t;
    }
    let parsed = doc.parse()?;
    let set = validate_set(parsed.algebra, parsed.generators, parsed.general_index, &tol).map_err(|e| match e {
        CoreError::NumericalFailure(m) => CliError::Numerical(m),
        other => CliError::Input(locate(&doc, other)),
    })?;
    Ok(Loaded { doc, set, tol })
}

/// Attach the offending generator label to a validation error.
fn locate(doc: &InputDocument, e: CoreError) -> String {
    let index = match &e {
        CoreError::NotSkewHermitian { index, .. }
        | CoreError::NotTraceless { index, .. }
        | CoreError::DesignatedNotDiagonal { index, .. }
        | CoreError::DegenerateSpectrum { index, .. } => Some(*index),
        _ => None,
    };
    match index.and_then(|i| doc.generators.get(i).map(|g| (i, g))) {
        Some((i, g)) => format!("generators[{i}] (label '{}'): {e}", g.label),
        None => e.to_string(),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn verdict_document(set: &GeneratorSet, tol: &Tolerances) -> (VerdictDocument, uqc_core::CouplingGraph) {
    let verdict = check_universality(set, tol);
    let eps = epsilon_bound(set).ok().map(|e| e.epsilon_max);
    (VerdictDocument::new(set, &verdict, eps), build_coupling_graph(set, tol))
}

fn oracle_doc(set: &GeneratorSet, tol: &Tolerances) -> Result<OracleDoc, CliError> {
    let cmp = compare_with_graph(set, tol)?;
    Ok(OracleDoc {
        dimension: cmp.report.dimension,
        target_dimension: cmp.report.target_dimension,
        expected_dimension: cmp.report.full_dimension(),
        agrees: cmp.agrees,
        closure_components: one_based_blocks(&cmp.closure_partition),
        rounds: cmp.report.rounds,
        residual_max: cmp.report.residual_max,
        trace_deficient: cmp.report.trace_deficient,
    })
}

fn render(doc: &VerdictDocument, graph: &uqc_core::CouplingGraph, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(doc),
        OutputFormat::Text => render_verdict(doc, graph),
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub oracle: bool,
    pub tau_edge: Option<f64>,
    pub format: OutputFormat,
    pub base: Tolerances,
}

pub fn check(input: &Path, opts: &CheckOptions) -> Result<String, CliError> {
    let Loaded { set, tol, .. } = load(input, &opts.base, opts.tau_edge)?;
    let (mut doc, graph) = verdict_document(&set, &tol);
    if opts.oracle {
        doc.oracle = Some(oracle_doc(&set, &tol)?);
    }
    Ok(render(&doc, &graph, opts.format))
}

#[derive(Debug, Clone, Default)]
pub struct RepairOptions {
    pub style: BridgeStyle,
    pub selection: BridgeSelection,
    pub out: Option<PathBuf>,
    pub tau_edge: Option<f64>,
    pub format: OutputFormat,
    pub base: Tolerances,
}

fn style_name(s: BridgeStyle) -> &'static str {
    match s {
        BridgeStyle::Antisymmetric => "antisym",
        BridgeStyle::SymmetricImaginary => "sym",
    }
}

pub fn repair(input: &Path, opts: &RepairOptions) -> Result<String, CliError> {
    let Loaded { doc: input_doc, set, tol } = load(input, &opts.base, opts.tau_edge)?;
    let (output_doc, result_set, repair_doc) = match uqc_core::repair(&set, opts.style, opts.selection, &tol) {
        Ok(plan) => {
            let repair_doc = RepairDoc {
                bridges: plan
                    .bridges
                    .iter()
                    .map(|b| BridgeDoc {
                        a: b.a + 1,
                        b: b.b + 1,
                        style: style_name(b.style),
                    })
                    .collect(),
                added_generators: plan
                    .added_generators
                    .iter()
                    .map(|g| GeneratorEntry::from_matrix(&g.label, g.matrix.matrix()))
                    .collect(),
                note: None,
            };
            let mut out = InputDocument::from_set(&plan.resulting_set, input_doc.tolerances.clone());
            out.general_index = input_doc.general_index;
            (out, plan.resulting_set, repair_doc)
        }
        Err(CoreError::EmptyPlan) => (
            input_doc.clone(),
            set,
            RepairDoc {
                bridges: Vec::new(),
                added_generators: Vec::new(),
                note: Some("coupling graph already connected; set written unchanged".into()),
            },
        ),
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &opts.out {
        fs::write(path, output_doc.to_json())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let (mut doc, graph) = verdict_document(&result_set, &tol);
    doc.repair = Some(repair_doc);
    Ok(render(&doc, &graph, opts.format))
}

#[derive(Debug, Clone)]
pub struct ConstructOptions {
    pub dim: usize,
    pub algebra: AlgebraKind,
    pub style: BridgeStyle,
    pub coefficients: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
}

/// Write the minimal universal pair. Returns the document text when no
/// output path is given, otherwise a one-line confirmation.
pub fn construct(opts: &ConstructOptions) -> Result<String, CliError> {
    let algebra = Algebra::new(opts.algebra, opts.dim).map_err(|e| CliError::Input(format!("--dim: {e}")))?;
    let set = minimal_pair_with_style(algebra, opts.coefficients.as_deref(), opts.style)?;
    let doc = InputDocument::from_set(&set, None);
    match &opts.out {
        Some(path) => {
            fs::write(path, doc.to_json())
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(format!("wrote {} generators for {algebra} to {}\n", set.len(), path.display()))
        }
        None => Ok(doc.to_json()),
    }
}

pub fn epsilon(input: &Path, base: &Tolerances) -> Result<String, CliError> {
    let Loaded { set, .. } = load(input, base, None)?;
    let bound = epsilon_bound(&set)?;
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut entries = Vec::with_capacity(set.len());
    for g in set.generators() {
        let norm = uqc_core::operator_norm(g.matrix.matrix());
        let eps = generator_epsilon(&g.matrix);
        let (eps, dist) = if eps.is_finite() {
            (Some(eps), Some(identity_distance(&g.matrix, 0.99 * eps)?))
        } else {
            (None, None)
        };
        entries.push(EpsilonEntry {
            label: g.label.clone(),
            operator_norm: norm,
            epsilon_max: eps,
            distance_at_0_99: dist,
            below_sqrt2: dist.is_none_or(|d| d < sqrt2),
        });
    }
    let doc = EpsilonDocument {
        all_below_sqrt2: entries.iter().all(|e| e.below_sqrt2),
        generators: entries,
        epsilon_max: bound.epsilon_max,
        sqrt2,
    };
    Ok(to_json(&doc))
}

pub fn oracle(input: &Path, tau_edge: Option<f64>, base: &Tolerances) -> Result<String, CliError> {
    let Loaded { set, tol, .. } = load(input, base, tau_edge)?;
    let cmp = compare_with_graph(&set, &tol)?;
    let doc = ClosureDocument {
        algebra: set.algebra().kind.into(),
        dimension: set.dim(),
        closure_dimension: cmp.report.dimension,
        target_dimension: cmp.report.target_dimension,
        expected_dimension: cmp.report.full_dimension(),
        rounds: cmp.report.rounds,
        residual_max: cmp.report.residual_max,
        trace_deficient: cmp.report.trace_deficient,
        closure_components: one_based_blocks(&cmp.closure_partition),
        graph_components: one_based_blocks(&cmp.graph_partition),
        agrees: cmp.agrees,
    };
    Ok(to_json(&doc))
}
