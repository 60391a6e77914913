//! Plain-text rendering of verdicts.

use std::fmt::Write;

use uqc_core::CouplingGraph;

use crate::document::VerdictDocument;

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn render_verdict(doc: &VerdictDocument, graph: &CouplingGraph) -> String {
    let mut out = String::new();
    let algebra = match doc.algebra {
        crate::document::AlgebraName::U => "u",
        crate::document::AlgebraName::Su => "su",
    };
    let _ = writeln!(out, "status: {}", doc.status);
    let _ = writeln!(out, "algebra: {algebra}({})", doc.dimension);
    let blocks: Vec<String> = doc.components.iter().map(|b| format!("{{{}}}", join(b))).collect();
    let _ = writeln!(out, "components: {}", blocks.join(" "));
    let _ = writeln!(out, "block sizes: ({})", join(&doc.block_sizes));
    let _ = writeln!(out, "permutation: ({})", join(&doc.permutation));
    if let Some(w) = &doc.witness_subspace {
        let _ = writeln!(out, "invariant subspace: span{{{}}}", w.iter().map(|k| format!("e{k}")).collect::<Vec<_>>().join(", "));
    }
    let gd = &doc.general_direction;
    let _ = write!(out, "general direction: {}", gd.status);
    if let Some(rel) = &gd.relation {
        let _ = write!(out, " (relation {:?}, residual {:.3e})", rel, gd.residual);
    }
    out.push('\n');
    if let Some(eps) = doc.epsilon_max {
        let _ = writeln!(out, "epsilon_max: {eps:.6}");
    }

    let _ = writeln!(out, "coupling graph ({} edges):", graph.edge_count());
    for (v, neighbours) in graph.adjacency().iter().enumerate() {
        let n: Vec<usize> = neighbours.iter().map(|x| x + 1).collect();
        let _ = writeln!(out, "  {:>3} | {}", v + 1, if n.is_empty() { "-".to_string() } else { join(&n) });
    }

    if let Some(o) = &doc.oracle {
        let _ = writeln!(
            out,
            "oracle: closure dimension {} of {} (expected {}), agrees: {}",
            o.dimension, o.target_dimension, o.expected_dimension, o.agrees
        );
    }
    if let Some(r) = &doc.repair {
        if r.bridges.is_empty() {
            let _ = writeln!(out, "repair: no bridges needed");
        }
        for (b, g) in r.bridges.iter().zip(&r.added_generators) {
            let _ = writeln!(out, "repair: bridge {}-{} ({}) as {}", b.a, b.b, b.style, g.label);
        }
    }
    out
}
