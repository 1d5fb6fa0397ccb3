//! Simple undirected graphs on vertices `0..n` with dense neighbour bitsets.

mod export;
mod products;

use std::collections::VecDeque;

use crate::abelian::{reduce, AbelianGroup, GroupElement};
use crate::bitset::Bitset;
use crate::error::{Error, Result};

pub use export::GraphJson;
pub use products::{
    cartesian_product, direct_product, lexicographic_product, minus_product_identity_check,
};

/// A simple undirected graph.
///
/// Equality compares adjacency only; vertex labels are provenance.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Bitset>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Bitset::new(n); n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = Some(labels);
        self
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &Bitset {
        &self.adj[u]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Bitset::count);
        self.adj.iter().all(|a| a.count() == k).then_some(k)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Ordered pairs `(u, v)` with `u ~ v`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.edge_count());
        for u in 0..self.order() {
            out.extend(self.adj[u].iter().map(|v| (u, v)));
        }
        out
    }

    pub fn label(&self, u: usize) -> String {
        match &self.labels {
            Some(l) => l[u].clone(),
            None => u.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Image of the graph under the vertex relabelling `u ↦ perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.order();
        let mut adj = vec![Bitset::new(n); n];
        for u in 0..n {
            for v in self.adj[u].iter() {
                adj[perm[u]].insert(perm[v]);
            }
        }
        Graph { adj, labels: None }
    }

    /// Does `perm` map edges onto edges?
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.order() {
            return false;
        }
        (0..self.order()).all(|u| {
            let nu = &self.adj[perm[u]];
            self.adj[u].count() == nu.count() && self.adj[u].iter().all(|v| nu.contains(perm[v]))
        })
    }
}

fn validate_connection_set(group: &AbelianGroup, set: &[GroupElement]) -> Result<Vec<bool>> {
    if set.is_empty() {
        return Err(Error::ConnectionSet {
            element: "{}".into(),
            reason: "connection set is empty",
        });
    }
    let mut member = vec![false; group.order()];
    for s in set {
        if s.coords().len() != group.rank()
            || s.coords().iter().zip(group.factors()).any(|(c, d)| c >= d)
        {
            return Err(Error::ConnectionSet {
                element: s.to_string(),
                reason: "element is not a canonical member of the group",
            });
        }
        if group.is_zero(s) {
            return Err(Error::ConnectionSet {
                element: s.to_string(),
                reason: "identity element in connection set",
            });
        }
        member[group.index_of(s)] = true;
    }
    for s in set {
        if !member[group.index_of(&group.neg(s))] {
            return Err(Error::ConnectionSet {
                element: s.to_string(),
                reason: "connection set is not inverse-closed; missing the inverse of",
            });
        }
    }
    Ok(member)
}

/// `Cay(G,S)`: vertices are group elements in lexicographic order and
/// `x ~ y` iff `y − x ∈ S`.
pub fn cayley_graph(group: &AbelianGroup, set: &[GroupElement]) -> Result<Graph> {
    let member = validate_connection_set(group, set)?;
    let n = group.order();
    let elems: Vec<GroupElement> = group.elements().collect();
    let mut g = Graph::new(n);
    for (x, ex) in elems.iter().enumerate() {
        for s in set {
            let y = group.index_of(&group.add(ex, s));
            debug_assert!(member[group.index_of(&group.sub(&elems[y], ex))]);
            g.adj[x].insert(y);
        }
    }
    Ok(g.with_labels(elems.iter().map(GroupElement::to_string).collect()))
}

/// Circulant `Cay(Z_n, S)`; entries of `set` are reduced modulo `n`.
pub fn circulant(n: u64, set: &[i64]) -> Result<Graph> {
    let group = AbelianGroup::cyclic(n as i64)?;
    if n == 1 {
        return Err(Error::ConnectionSet {
            element: "0".into(),
            reason: "the trivial group admits no connection set",
        });
    }
    let elems: Vec<GroupElement> = set
        .iter()
        .map(|&s| GroupElement(vec![reduce(s, n)]))
        .collect();
    cayley_graph(&group, &elems)
}

/// `D(Γ) = Γ × K₂`; vertex `(u, x)` has index `u + x·n`.
pub fn double_cover(g: &Graph) -> Graph {
    let n = g.order();
    let mut d = Graph::new(2 * n);
    for (u, v) in g.edges() {
        d.add_edge(u, v + n);
        d.add_edge(v, u + n);
    }
    let labels = (0..2)
        .flat_map(|x| (0..n).map(move |u| (u, x)))
        .map(|(u, x)| format!("({},{x})", g.label(u)))
        .collect();
    d.with_labels(labels)
}

/// For odd `n`, `D(Cay(Z_n,S)) ≅ Cay(Z_2n, T)` where each `t ∈ T` is the odd
/// lift of some `s ∈ S` (`t ≡ s mod n`).
pub fn double_cover_as_circulant(n: u64, set: &[i64]) -> Result<(u64, Vec<u64>)> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    // validates the set
    circulant(n, set)?;
    let mut lifted: Vec<u64> = set
        .iter()
        .map(|&s| {
            let r = reduce(s, n);
            if r % 2 == 1 {
                r
            } else {
                r + n
            }
        })
        .collect();
    lifted.sort_unstable();
    lifted.dedup();
    Ok((2 * n, lifted))
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        g.add_edge(u, (u + 1) % n);
    }
    Ok(g)
}

pub fn edgeless(n: usize) -> Graph {
    Graph::new(n)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let n = parts.iter().map(Graph::order).sum();
    let mut g = Graph::new(n);
    let mut offset = 0;
    for p in parts {
        for (u, v) in p.edges() {
            g.add_edge(u + offset, v + offset);
        }
        offset += p.order();
    }
    g
}

/// Component index of every vertex, numbered in order of first vertex.
pub fn components(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).iter() {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn is_connected(g: &Graph) -> bool {
    g.order() == 0 || components(g).iter().all(|&c| c == 0)
}

/// BFS 2-colouring over every component.
pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut colour = vec![u8::MAX; n];
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).iter() {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Distinct vertices have distinct neighbourhoods.
pub fn is_vertex_determining(g: &Graph) -> bool {
    let mut rows: Vec<&Bitset> = g.adj.iter().collect();
    rows.sort();
    rows.windows(2).all(|w| w[0] != w[1])
}

/// Isomorphism test via canonical forms.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    crate::autgroup::are_isomorphic(a, b)
}
