//! Coupling-graph universality criterion.
//!
//! Vertices are standard basis indices. An edge `{r, l}` exists when some
//! generator other than the designated diagonal direction has a nonzero
//! `<e_r|X_j|e_l>`. With a general direction present, the set is universal
//! exactly when this graph is connected; otherwise the components give the
//! invariant coordinate subspaces and the block-diagonal form.

use std::collections::BTreeMap;

use crate::generators::{
    check_general_direction, is_constructed_direction, Generator, GeneratorSet, IndependenceStatus,
    SpectrumIndependenceVerdict,
};
use crate::linalg::ComplexMatrix;
use crate::tolerance::Tolerances;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Contribution of one generator entry to an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSource {
    pub generator: usize,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingGraph {
    dim: usize,
    /// Keys are `(r, l)` with `r < l`, 0-based.
    edges: BTreeMap<(usize, usize), Vec<EdgeSource>>,
}

impl CouplingGraph {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            edges: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge_sources(&self, a: usize, b: usize) -> Option<&[EdgeSource]> {
        self.edges.get(&(a.min(b), a.max(b))).map(Vec::as_slice)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains_key(&(a.min(b), a.max(b)))
    }

    /// Add every coupling carried by `matrix`, tagged with `generator`.
    pub fn add_matrix(&mut self, generator: usize, matrix: &ComplexMatrix, tol: &Tolerances) {
        debug_assert_eq!(matrix.dim(), self.dim);
        let cutoff = tol.edge_cutoff(matrix.max_abs());
        for r in 0..self.dim {
            for l in (r + 1)..self.dim {
                let magnitude = matrix.get(r, l).norm().max(matrix.get(l, r).norm());
                if magnitude > cutoff {
                    self.edges
                        .entry((r, l))
                        .or_default()
                        .push(EdgeSource { generator, magnitude });
                }
            }
        }
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.dim];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj.iter_mut().for_each(|n| n.sort_unstable());
        adj
    }

    pub fn partition(&self) -> Partition {
        let mut uf = UnionFind::new(self.dim);
        for &(a, b) in self.edges.keys() {
            uf.union(a, b);
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.dim {
            let root = uf.find(v);
            blocks.entry(root).or_default().push(v);
        }
        Partition::new(blocks.into_values().collect())
    }
}

/// Partition of `0..d` into blocks, ordered by smallest member with members
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        blocks.sort_by_key(|b| b[0]);
        Self { blocks }
    }

    pub fn singletons(dim: usize) -> Self {
        Self::new((0..dim).map(|v| vec![v]).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Basis order that lists the blocks contiguously.
    pub fn permutation(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn block_of(&self, v: usize) -> Option<&[usize]> {
        self.blocks.iter().find(|b| b.contains(&v)).map(Vec::as_slice)
    }

    /// Apply a relabelling `v -> map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Self {
        Self::new(self.blocks.iter().map(|b| b.iter().map(|&v| map[v]).collect()).collect())
    }
}

pub fn build_coupling_graph(set: &GeneratorSet, tol: &Tolerances) -> CouplingGraph {
    let mut graph = CouplingGraph::empty(set.dim());
    for (j, g) in set.off_designated() {
        graph.add_matrix(j, g.matrix.matrix(), tol);
    }
    graph
}

/// Coupling-graph partition of an arbitrary list of matrices, none of them
/// designated.
pub fn partition_of_matrices<'a>(
    dim: usize,
    matrices: impl IntoIterator<Item = &'a ComplexMatrix>,
    tol: &Tolerances,
) -> Partition {
    let mut graph = CouplingGraph::empty(dim);
    for (j, m) in matrices.into_iter().enumerate() {
        graph.add_matrix(j, m, tol);
    }
    graph.partition()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniversalityStatus {
    Universal,
    Reducible,
    /// Connected graph, but the general direction is not certified.
    ConditionallyUniversal,
}

impl UniversalityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Universal => "universal",
            Self::Reducible => "reducible",
            Self::ConditionallyUniversal => "conditionally_universal",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalityVerdict {
    pub status: UniversalityStatus,
    pub components: Partition,
    pub permutation: Vec<usize>,
    pub block_sizes: Vec<usize>,
    /// Component of the start vertex `0` when reducible.
    pub witness_subspace: Option<Vec<usize>>,
    pub general_direction: SpectrumIndependenceVerdict,
}

/// Independence verdict for the designated direction of `set`.
pub fn general_direction_verdict(set: &GeneratorSet, tol: &Tolerances) -> SpectrumIndependenceVerdict {
    let phases = set.phases();
    if set.spectrum_issue().is_none() && is_constructed_direction(&phases, set.algebra()) {
        return SpectrumIndependenceVerdict::constructed(tol.relation_bound);
    }
    check_general_direction(&phases, set.algebra(), tol.relation_bound, tol.relation)
}

/// Decide universality from connectivity and the general-direction test.
pub fn check_universality(set: &GeneratorSet, tol: &Tolerances) -> UniversalityVerdict {
    let graph = build_coupling_graph(set, tol);
    let components = graph.partition();
    let general_direction = general_direction_verdict(set, tol);
    verdict_from_parts(components, general_direction)
}

pub(crate) fn verdict_from_parts(
    components: Partition,
    general_direction: SpectrumIndependenceVerdict,
) -> UniversalityVerdict {
    let connected = components.len() <= 1;
    let status = match (connected, general_direction.status) {
        (false, _) => UniversalityStatus::Reducible,
        (true, IndependenceStatus::Dependent) => UniversalityStatus::ConditionallyUniversal,
        (true, _) => UniversalityStatus::Universal,
    };
    let witness_subspace = (!connected).then(|| components.block_of(0).unwrap_or(&[]).to_vec());
    UniversalityVerdict {
        status,
        permutation: components.permutation(),
        block_sizes: components.block_sizes(),
        components,
        witness_subspace,
        general_direction,
    }
}

/// Component partition and the permutation that makes every generator
/// block-diagonal.
pub fn block_partition(set: &GeneratorSet, tol: &Tolerances) -> (Partition, Vec<usize>) {
    let partition = build_coupling_graph(set, tol).partition();
    let permutation = partition.permutation();
    debug_assert!(block_certificate(set.generators(), &partition, tol) <= 1.0);
    (partition, permutation)
}

/// Largest off-block entry over all generators after conjugating by the
/// partition's permutation, divided by that generator's edge cutoff.
/// Values `<= 1` certify the block-diagonal form.
pub fn block_certificate(generators: &[Generator], partition: &Partition, tol: &Tolerances) -> f64 {
    let order = partition.permutation();
    let mut block_id = vec![0usize; order.len()];
    let mut pos = 0;
    for (b, block) in partition.blocks().iter().enumerate() {
        for _ in block {
            block_id[pos] = b;
            pos += 1;
        }
    }
    let mut worst = 0.0f64;
    for g in generators {
        let p = g.matrix.matrix().permuted(&order);
        let cutoff = tol.edge_cutoff(g.matrix.matrix().max_abs());
        for r in 0..p.dim() {
            for c in 0..p.dim() {
                if block_id[r] != block_id[c] {
                    let m = p.get(r, c).norm();
                    if m > 0.0 {
                        worst = worst.max(if cutoff > 0.0 { m / cutoff } else { f64::INFINITY });
                    }
                }
            }
        }
    }
    worst
}

/// Reachable index set from `start`, by repeated application of the
/// off-designated generators until no index is added.
pub fn reachable_from(set: &GeneratorSet, start: usize, tol: &Tolerances) -> Vec<usize> {
    let d = set.dim();
    let mut current = vec![false; d];
    current[start] = true;
    loop {
        let mut grew = false;
        for l in 0..d {
            if !current[l] {
                continue;
            }
            for (_, g) in set.off_designated() {
                let m = g.matrix.matrix();
                let cutoff = tol.edge_cutoff(m.max_abs());
                for (r, seen) in current.iter_mut().enumerate() {
                    if !*seen && m.get(r, l).norm() > cutoff {
                        *seen = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    (0..d).filter(|&v| current[v]).collect()
}
