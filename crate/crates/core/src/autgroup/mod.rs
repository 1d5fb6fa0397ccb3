//! Automorphism groups of graphs, permutation-group orders and orbits.

mod canon;
mod partition;
mod perm;
mod schreier;
mod search;

use num_bigint::BigUint;
use serde::Serialize;

use crate::abelian::{cyclic_set_stabilizer, set_stabilizer, AbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::graph::{cayley_graph, Graph};
use crate::limits;

pub use canon::{are_isomorphic, canonical_form, canonical_form_colored, Canonical, CanonicalForm};
pub use perm::Permutation;
pub use schreier::StabChain;

use search::UnionFind;

/// A permutation group given by generators, with its stabiliser chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

/// JSON view: generators as image arrays and the order as a decimal string.
#[derive(Clone, Debug, Serialize)]
pub struct PermGroupJson {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: String,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(g.degree(), degree));
        }
        let chain = StabChain::new(degree, &generators, &[]);
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    fn with_base(degree: usize, generators: Vec<Permutation>, base: &[usize]) -> Self {
        let chain = StabChain::new(degree, &generators, base);
        PermGroup {
            degree,
            generators,
            chain,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn to_json(&self) -> PermGroupJson {
        PermGroupJson {
            degree: self.degree,
            generators: self.generators.clone(),
            order: self.order().to_string(),
        }
    }
}

/// `Aut(Γ)`.
pub fn automorphism_group(graph: &Graph) -> Result<PermGroup> {
    automorphism_group_colored(graph, None)
}

/// Automorphisms of `graph` that also preserve the vertex colouring.
pub fn automorphism_group_colored(graph: &Graph, colors: Option<&[usize]>) -> Result<PermGroup> {
    let n = graph.order();
    limits::check("automorphism group vertices", n, limits::vertex_cap())?;
    if let Some(c) = colors {
        if c.len() != n {
            return Err(Error::DegreeMismatch(c.len(), n));
        }
    }
    let out = search::search(graph, colors);
    let group = PermGroup::with_base(n, out.generators, &out.base);
    debug_assert_eq!(
        group.order(),
        out.orbit_sizes.iter().map(|&s| BigUint::from(s)).product::<BigUint>()
    );
    Ok(group)
}

/// Order of the group generated by `generators`.
pub fn group_order(generators: &[Permutation]) -> Result<BigUint> {
    let Some(first) = generators.first() else {
        return Ok(BigUint::from(1u32));
    };
    Ok(PermGroup::new(first.degree(), generators.to_vec())?.order())
}

fn orbit_classes<T: Clone>(items: &[T], index: impl Fn(&T) -> usize, uf: &mut UnionFind) -> Vec<Vec<T>> {
    let mut slot = std::collections::HashMap::new();
    let mut out: Vec<Vec<T>> = Vec::new();
    for it in items {
        let r = uf.find(index(it));
        let k = *slot.entry(r).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[k].push(it.clone());
    }
    out
}

/// Vertex orbits, each sorted, ordered by least element.
pub fn vertex_orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(group.degree);
    for g in &group.generators {
        uf.absorb(g);
    }
    let pts: Vec<usize> = (0..group.degree).collect();
    orbit_classes(&pts, |&p| p, &mut uf)
}

fn check_degree(graph: &Graph, group: &PermGroup) -> Result<()> {
    if graph.order() != group.degree {
        return Err(Error::DegreeMismatch(group.degree, graph.order()));
    }
    Ok(())
}

/// Orbits on ordered pairs `(u, v)` with `u ~ v`.
pub fn arc_orbits(graph: &Graph, group: &PermGroup) -> Result<Vec<Vec<(usize, usize)>>> {
    check_degree(graph, group)?;
    let n = graph.order();
    let arcs = graph.arcs();
    let mut uf = UnionFind::new(n * n);
    for g in &group.generators {
        for &(u, v) in &arcs {
            uf.union(u * n + v, g.apply(u) * n + g.apply(v));
        }
    }
    Ok(orbit_classes(&arcs, |&(u, v)| u * n + v, &mut uf))
}

/// Orbits on edges `{u, v}`, reported as `(min, max)`.
pub fn edge_orbits(graph: &Graph, group: &PermGroup) -> Result<Vec<Vec<(usize, usize)>>> {
    check_degree(graph, group)?;
    let n = graph.order();
    let key = |u: usize, v: usize| u.min(v) * n + u.max(v);
    let edges = graph.edges();
    let mut uf = UnionFind::new(n * n);
    for g in &group.generators {
        for &(u, v) in &edges {
            uf.union(key(u, v), key(g.apply(u), g.apply(v)));
        }
    }
    Ok(orbit_classes(&edges, |&(u, v)| key(u, v), &mut uf))
}

pub fn is_arc_transitive(graph: &Graph) -> Result<bool> {
    if graph.edge_count() == 0 {
        return Err(Error::UndefinedTransitivity);
    }
    Ok(arc_orbits(graph, &automorphism_group(graph)?)?.len() == 1)
}

pub fn is_edge_transitive(graph: &Graph) -> Result<bool> {
    if graph.edge_count() == 0 {
        return Err(Error::UndefinedTransitivity);
    }
    Ok(edge_orbits(graph, &automorphism_group(graph)?)?.len() == 1)
}

fn dedup_indices(group: &AbelianGroup, set: &[GroupElement]) -> Vec<usize> {
    let mut idx: Vec<usize> = set.iter().map(|s| group.index_of(s)).collect();
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// `Aut(G,S)` as permutations of element indices.
pub fn set_stabilizer_action(group: &AbelianGroup, set: &[GroupElement]) -> Result<Vec<Vec<usize>>> {
    if let Some(n) = group.cyclic_order() {
        let s: Vec<u64> = set.iter().map(|e| e.coords().first().copied().unwrap_or(0)).collect();
        return Ok(cyclic_set_stabilizer(n, &s)
            .into_iter()
            .map(|g| (0..n).map(|x| ((g as u128 * x as u128) % n as u128) as usize).collect())
            .collect());
    }
    Ok(set_stabilizer(group, set)?
        .into_iter()
        .map(|a| a.as_permutation().to_vec())
        .collect())
}

/// Is `Aut(G,S)` transitive on `S`?
pub fn sufficient_arc_transitivity(group: &AbelianGroup, set: &[GroupElement]) -> Result<bool> {
    cayley_graph(group, set)?;
    let idx = dedup_indices(group, set);
    let action = set_stabilizer_action(group, set)?;
    let mut orbit: Vec<usize> = action.iter().map(|p| p[idx[0]]).collect();
    orbit.sort_unstable();
    orbit.dedup();
    Ok(orbit == idx)
}

/// Does `|Aut(Cay(G,S))| = |G|·|Aut(G,S)|` hold?
pub fn is_normal_cayley(group: &AbelianGroup, set: &[GroupElement]) -> Result<bool> {
    let g = cayley_graph(group, set)?;
    let stab = set_stabilizer_action(group, set)?.len();
    let aut = automorphism_group(&g)?;
    Ok(aut.order() == BigUint::from(group.order()) * BigUint::from(stab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, complete, cycle, direct_product, double_cover, edgeless};
    use crate::oracle::brute_force_automorphism_count;

    fn order(g: &Graph) -> BigUint {
        automorphism_group(g).unwrap().order()
    }

    #[test]
    fn small_orders() {
        assert_eq!(order(&complete(4)), 24u32.into());
        assert_eq!(order(&cycle(8).unwrap()), 16u32.into());
        assert_eq!(order(&direct_product(&complete(4), &complete(2))), 48u32.into());
        assert_eq!(order(&edgeless(3)), 6u32.into());
        assert_eq!(order(&Graph::new(0)), 1u32.into());
        assert_eq!(order(&Graph::new(1)), 1u32.into());
    }

    #[test]
    fn generators_preserve_edges() {
        let g = circulant(24, &[1, 3, 21, 23, 12]).unwrap();
        let a = automorphism_group(&g).unwrap();
        for p in a.generators() {
            assert!(g.is_automorphism(p.images()));
        }
    }

    #[test]
    fn order_matches_orbit_product() {
        let g = circulant(20, &[1, 19, 5, 15, 10]).unwrap();
        let out = search::search(&g, None);
        let product: BigUint = out.orbit_sizes.iter().map(|&s| BigUint::from(s)).product();
        let grp = PermGroup::with_base(20, out.generators, &out.base);
        assert_eq!(grp.order(), product);
    }

    #[test]
    fn order_matches_brute_force() {
        for g in [
            circulant(8, &[1, 4, 7]).unwrap(),
            circulant(6, &[2, 4]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap(),
        ] {
            assert_eq!(order(&g), BigUint::from(brute_force_automorphism_count(&g).unwrap()));
        }
    }

    #[test]
    fn group_order_from_generators() {
        let c4 = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let t = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(group_order(std::slice::from_ref(&c4)).unwrap(), 4u32.into());
        assert_eq!(group_order(&[t, c4]).unwrap(), 24u32.into());
        let d = double_cover(&complete(4));
        let gens = automorphism_group(&d).unwrap().generators().to_vec();
        assert_eq!(group_order(&gens).unwrap(), 48u32.into());
        let bad = [Permutation::identity(3), Permutation::identity(4)];
        assert!(matches!(group_order(&bad), Err(Error::DegreeMismatch(..))));
    }

    #[test]
    fn orbit_examples() {
        let c5 = cycle(5).unwrap();
        let a = automorphism_group(&c5).unwrap();
        let arcs = arc_orbits(&c5, &a).unwrap();
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].len(), 10);
        let g = circulant(8, &[1, 4, 7]).unwrap();
        let a = automorphism_group(&g).unwrap();
        let mut sizes: Vec<usize> = edge_orbits(&g, &a).unwrap().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, [4, 8]);
        let e3 = edgeless(3);
        assert_eq!(vertex_orbits(&automorphism_group(&e3).unwrap()).len(), 1);
    }

    #[test]
    fn transitivity() {
        assert!(is_arc_transitive(&cycle(6).unwrap()).unwrap());
        assert!(is_arc_transitive(&circulant(15, &[1, 4, 11, 14]).unwrap()).unwrap());
        assert!(!is_arc_transitive(&circulant(8, &[1, 4, 7]).unwrap()).unwrap());
        assert!(matches!(is_edge_transitive(&edgeless(2)), Err(Error::UndefinedTransitivity)));
    }

    fn cyc(n: u64, s: &[u64]) -> (AbelianGroup, Vec<GroupElement>) {
        (
            AbelianGroup::cyclic(n as i64).unwrap(),
            s.iter().map(|&x| GroupElement(vec![x])).collect(),
        )
    }

    #[test]
    fn sufficient_condition() {
        let (g, s) = cyc(15, &[1, 4, 11, 14]);
        assert!(sufficient_arc_transitivity(&g, &s).unwrap());
        let (g, s) = cyc(9, &[1, 8]);
        assert!(sufficient_arc_transitivity(&g, &s).unwrap());
        let (g, s) = cyc(8, &[1, 4, 7]);
        assert!(!sufficient_arc_transitivity(&g, &s).unwrap());
    }

    #[test]
    fn normality() {
        let (g, s) = cyc(5, &[1, 4]);
        assert!(is_normal_cayley(&g, &s).unwrap());
        let (g, s) = cyc(4, &[1, 2, 3]);
        assert!(!is_normal_cayley(&g, &s).unwrap());
        let (g, s) = cyc(15, &[1, 2, 4, 7, 8, 11, 13, 14]);
        assert!(!is_normal_cayley(&g, &s).unwrap());
    }

    #[test]
    fn vertex_cap_enforced() {
        let g = edgeless(limits::vertex_cap() + 1);
        assert!(automorphism_group(&g).unwrap_err().is_size_limit());
    }

    #[test]
    fn canonical_forms_agree_on_relabelling() {
        let g = circulant(12, &[1, 5, 7, 11, 6]).unwrap();
        let perm: Vec<usize> = (0..12).map(|i| (i * 5 + 3) % 12).collect();
        let h = g.relabel(&perm);
        assert_eq!(canonical_form(&g).unwrap().form, canonical_form(&h).unwrap().form);
        assert!(are_isomorphic(&g, &h).unwrap());
        assert!(!are_isomorphic(&g, &circulant(12, &[1, 11, 2, 10, 6]).unwrap()).unwrap());
    }

    #[test]
    fn canonical_labelling_realises_form() {
        let g = circulant(10, &[1, 9, 3, 7]).unwrap();
        let c = canonical_form(&g).unwrap();
        let h = g.relabel(&c.labelling);
        assert_eq!(canonical_form(&h).unwrap().form, c.form);
    }
}
