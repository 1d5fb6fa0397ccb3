//! Boolean square and Cartesian skeleton.

use crate::graph::Graph;

/// `u ~ v` (for `u ≠ v`) iff `N(u) ∩ N(v) ≠ ∅`; no loops.
pub fn boolean_square(graph: &Graph) -> Graph {
    let n = graph.order();
    let mut out = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if graph.neighbors(u).intersects(graph.neighbors(v)) {
                out.add_edge(u, v);
            }
        }
    }
    out
}

fn one_side(graph: &Graph, u: usize, v: usize, w: usize) -> bool {
    let (nu, nv, nw) = (graph.neighbors(u), graph.neighbors(v), graph.neighbors(w));
    nu.intersection(nv).is_proper_subset(&nu.intersection(nw)) || (nu.is_proper_subset(nw) && nw.is_proper_subset(nv))
}

/// Is the Boolean-square edge `{u, v}` dispensable, and by which `w`?
pub fn dispensable_witness(graph: &Graph, u: usize, v: usize) -> Option<usize> {
    (0..graph.order()).find(|&w| one_side(graph, u, v, w) && one_side(graph, v, u, w))
}

/// Dispensable edges of the Boolean square as sorted `(u, v)` with `u < v`.
pub fn dispensable_edges(graph: &Graph) -> Vec<(usize, usize)> {
    boolean_square(graph)
        .edges()
        .into_iter()
        .filter(|&(u, v)| dispensable_witness(graph, u, v).is_some())
        .collect()
}

/// The Boolean square with every dispensable edge removed.
pub fn cartesian_skeleton(graph: &Graph) -> Graph {
    let mut sk = boolean_square(graph);
    for (u, v) in dispensable_edges(graph) {
        sk.remove_edge(u, v);
    }
    sk
}
