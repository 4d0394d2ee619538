//! The weighted complete graph on facets: vertex `i` weighs `|σ_i|`, edge
//! `{i, j}` weighs `|σ_i ∩ σ_j|`.

use std::fmt::Write as _;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::ordering::FacetOrdering;
use crate::union_find::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFacetGraph {
    vertex_weights: Vec<usize>,
    /// Row-major `n x n`; the diagonal is unused.
    edge_weights: Vec<usize>,
}

impl WeightedFacetGraph {
    pub fn len(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_weights.is_empty()
    }

    pub fn vertex_weight(&self, i: usize) -> usize {
        self.vertex_weights[i]
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> usize {
        self.edge_weights[i * self.len() + j]
    }

    /// All edges `(i, j, w)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.edge_weight(i, j))))
    }

    /// `χ_w` of the whole complete graph.
    pub fn chi_w(&self) -> i64 {
        self.vertex_weights.iter().sum::<usize>() as i64 - self.edges().map(|(_, _, w)| w).sum::<usize>() as i64
    }

    /// `χ_w` of the spanning subgraph with the given edges.
    pub fn chi_w_of(&self, edges: &[(usize, usize)]) -> i64 {
        self.vertex_weights.iter().sum::<usize>() as i64
            - edges.iter().map(|&(i, j)| self.edge_weight(i, j)).sum::<usize>() as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    /// `m - 1` edges, each written `(earlier endpoint, later endpoint)` in
    /// the order they were added.
    pub edges: Vec<(usize, usize)>,
}

pub fn weighted_graph(x: &SimplicialComplex) -> Result<WeightedFacetGraph> {
    x.require_non_void()?;
    let f = x.facets();
    let n = f.len();
    let mut edge_weights = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                edge_weights[i * n + j] = (f[i] & f[j]).len();
            }
        }
    }
    Ok(WeightedFacetGraph { vertex_weights: f.iter().map(|s| s.len()).collect(), edge_weights })
}

/// `χ_w(F) = Σ w(v) - Σ_{e ∈ F} w(e)`.
pub fn chi_w(graph: &WeightedFacetGraph, tree: &SpanningTree) -> i64 {
    graph.chi_w_of(&tree.edges)
}

/// The tree built along `order`: each facet after the first is joined to the
/// earliest previous facet with which it shares the most vertices.
pub fn construction_tree(x: &SimplicialComplex, order: &FacetOrdering) -> Result<SpanningTree> {
    let g = weighted_graph(x)?;
    if order.len() != g.len() {
        return Err(Error::OrderLength { expected: g.len(), got: order.len() });
    }
    let perm = order.as_slice();
    let edges = (1..perm.len())
        .map(|pos| {
            let target = perm[pos];
            let mut best = perm[0];
            for &earlier in &perm[1..pos] {
                if g.edge_weight(earlier, target) > g.edge_weight(best, target) {
                    best = earlier;
                }
            }
            (best, target)
        })
        .collect();
    Ok(SpanningTree { edges })
}

/// Maximum-weight spanning tree by Kruskal; ties broken by the lexicographic
/// edge pair.
pub fn max_spanning_tree(graph: &WeightedFacetGraph) -> SpanningTree {
    let mut edges: Vec<(usize, usize, usize)> = graph.edges().collect();
    edges.sort_by(|a, b| b.2.cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut uf = UnionFind::new(graph.len());
    let chosen = edges.into_iter().filter(|&(i, j, _)| uf.union(i, j)).map(|(i, j, _)| (i, j)).collect();
    SpanningTree { edges: chosen }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRegularTest {
    /// Smallest `χ_w(F)` over spanning trees `F`.
    pub min_chi_w: i64,
    pub num_vertices: usize,
    pub tree: SpanningTree,
    /// `min χ_w(F) == |V(X)|`.
    pub two_regular: bool,
    /// Set for a single facet: the ideal is zero and the test is vacuous.
    pub zero_ideal: bool,
}

/// Whether `I_X` is 2-regular via the spanning-tree criterion
/// `∃F: χ_w(F) = |V(X)|`. Minimising `χ_w` over trees means maximising the
/// tree's edge weight.
pub fn two_regular_tree_test(x: &SimplicialComplex) -> Result<TwoRegularTest> {
    let g = weighted_graph(x)?;
    let tree = max_spanning_tree(&g);
    let min_chi_w = chi_w(&g, &tree);
    let zero_ideal = g.len() == 1;
    Ok(TwoRegularTest {
        min_chi_w,
        num_vertices: x.num_vertices(),
        two_regular: !zero_ideal && min_chi_w == x.num_vertices() as i64,
        tree,
        zero_ideal,
    })
}

/// Edge-list export: `m |V|`, then `v i w`, `e i j w` and `t i j` lines.
pub fn export_edge_list(x: &SimplicialComplex, graph: &WeightedFacetGraph, tree: &SpanningTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", graph.len(), x.num_vertices());
    for i in 0..graph.len() {
        let _ = writeln!(out, "v {} {}", i, graph.vertex_weight(i));
    }
    for (i, j, w) in graph.edges() {
        let _ = writeln!(out, "e {i} {j} {w}");
    }
    for &(i, j) in &tree.edges {
        let _ = writeln!(out, "t {i} {j}");
    }
    out
}
