//! Adjacency matrices compatible with a nonidentity permutation matrix.
//!
//! `σ` is a witness when `σ(x) ∉ N(x)` for every `x` and
//! `σ(y) ∈ N(x) ⇔ σ(x) ∈ N(y)` for every pair, which says that `A·P_σ` is
//! again a symmetric 0/1 matrix with zero diagonal.

use serde::{Deserialize, Serialize};

use crate::abelian::{automorphisms, crt_solve, gcd, units_mod, AbelianGroup, GroupElement};
use crate::autgroup::{is_arc_transitive, sufficient_arc_transitivity, Permutation};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{cayley_graph, circulant, is_bipartite, is_connected, is_vertex_determining, Graph};
use crate::stability::{classify, Status};

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MatrixSearch,
    CayleySearch,
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompatibilityResult {
    pub compatible: bool,
    pub witness: Option<Permutation>,
    pub method: Method,
    pub search_exhausted: bool,
    /// The node limit stopped the search before a decision.
    pub inconclusive: bool,
    pub nodes: u64,
}

impl CompatibilityResult {
    /// `Some(answer)` when decided, `None` when inconclusive.
    pub fn decided(&self) -> Option<bool> {
        (!self.inconclusive).then_some(self.compatible)
    }
}

/// Check the two witness conditions directly.
pub fn verify_witness(graph: &Graph, sigma: &Permutation) -> bool {
    witness_ok(&adjacency(graph), sigma)
}

fn adjacency(graph: &Graph) -> Vec<Bitset> {
    (0..graph.order()).map(|v| graph.neighbors(v).clone()).collect()
}

fn witness_ok(nbr: &[Bitset], sigma: &Permutation) -> bool {
    let n = nbr.len();
    sigma.degree() == n
        && !sigma.is_identity()
        && (0..n).all(|x| !nbr[x].contains(sigma.apply(x)))
        && (0..n).all(|x| (0..n).all(|y| nbr[x].contains(sigma.apply(y)) == nbr[y].contains(sigma.apply(x))))
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    Limit,
}

struct Backtrack<'a> {
    nbr: &'a [Bitset],
    images: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Backtrack<'_> {
    fn run(&mut self, x: usize, domains: &[Bitset], moved: bool) -> Option<Outcome> {
        let n = self.nbr.len();
        if x == n {
            return moved.then(|| Outcome::Found(self.images.clone()));
        }
        for a in domains[x].iter() {
            if x == n - 1 && !moved && a == x {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.limit {
                return Some(Outcome::Limit);
            }
            let mut next = domains.to_vec();
            let mut dead = false;
            for (z, dz) in next.iter_mut().enumerate().skip(x + 1) {
                dz.remove(a);
                if self.nbr[z].contains(a) {
                    dz.intersect_with(&self.nbr[x]);
                } else {
                    dz.difference_with(&self.nbr[x]);
                }
                if dz.is_empty() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.images[x] = a;
            if let Some(out) = self.run(x + 1, &next, moved || a != x) {
                return Some(out);
            }
        }
        None
    }
}

fn backtrack(nbr: &[Bitset], node_limit: u64, method: Method) -> CompatibilityResult {
    let n = nbr.len();
    let domains: Vec<Bitset> = nbr
        .iter()
        .map(|nx| {
            let mut d = Bitset::full(n);
            d.difference_with(nx);
            d
        })
        .collect();
    let mut bt = Backtrack {
        nbr,
        images: vec![0; n],
        nodes: 0,
        limit: node_limit,
    };
    let outcome = if n < 2 { Outcome::Exhausted } else { bt.run(0, &domains, false).unwrap_or(Outcome::Exhausted) };
    let nodes = bt.nodes;
    match outcome {
        Outcome::Found(images) => {
            let sigma = Permutation::from_images_unchecked(images);
            assert!(witness_ok(nbr, &sigma), "search produced an invalid witness");
            CompatibilityResult {
                compatible: true,
                witness: Some(sigma),
                method,
                search_exhausted: false,
                inconclusive: false,
                nodes,
            }
        }
        Outcome::Exhausted => CompatibilityResult {
            compatible: false,
            witness: None,
            method,
            search_exhausted: true,
            inconclusive: false,
            nodes,
        },
        Outcome::Limit => CompatibilityResult {
            compatible: false,
            witness: None,
            method,
            search_exhausted: false,
            inconclusive: true,
            nodes,
        },
    }
}

/// Backtracking over `σ` in vertex order with forward checking.
pub fn compatible_matrix_search(graph: &Graph, node_limit: u64) -> CompatibilityResult {
    backtrack(&adjacency(graph), node_limit, Method::MatrixSearch)
}

/// Same question for `Cay(G,S)` phrased through group differences, trying
/// affine maps `x ↦ φ(x) + c` before the general search.
pub fn compatible_cayley_search(
    group: &AbelianGroup,
    set: &[GroupElement],
    node_limit: u64,
) -> Result<CompatibilityResult> {
    cayley_graph(group, set)?;
    let n = group.order();
    let table = group.addition_table();
    let elems: Vec<GroupElement> = group.elements().collect();
    let neg: Vec<usize> = elems.iter().map(|e| group.index_of(&group.neg(e))).collect();
    let mut in_s = vec![false; n];
    for s in set {
        in_s[group.index_of(s)] = true;
    }
    let diff = |a: usize, b: usize| table[a * n + neg[b]];
    let nbr: Vec<Bitset> = (0..n)
        .map(|x| Bitset::from_indices(n, (0..n).filter(|&y| in_s[diff(y, x)])))
        .collect();
    let valid = |sigma: &[usize]| {
        (0..n).all(|x| !in_s[diff(sigma[x], x)])
            && (0..n).all(|x| (0..n).all(|y| in_s[diff(sigma[y], x)] == in_s[diff(sigma[x], y)]))
    };

    let linear: Vec<Vec<usize>> = match group.cyclic_order() {
        Some(m) => units_mod(m)
            .into_iter()
            .map(|g| (0..m).map(|x| ((g as u128 * x as u128) % m as u128) as usize).collect())
            .collect(),
        None => automorphisms(group)
            .map(|auts| auts.into_iter().map(|a| a.as_permutation().to_vec()).collect())
            .unwrap_or_else(|_| vec![(0..n).collect()]),
    };
    for phi in &linear {
        for c in 0..n {
            let sigma: Vec<usize> = (0..n).map(|x| table[phi[x] * n + c]).collect();
            if sigma.iter().enumerate().all(|(i, &s)| i == s) {
                continue;
            }
            if valid(&sigma) {
                let sigma = Permutation::from_images_unchecked(sigma);
                assert!(witness_ok(&nbr, &sigma), "affine candidate failed re-verification");
                return Ok(CompatibilityResult {
                    compatible: true,
                    witness: Some(sigma),
                    method: Method::CayleySearch,
                    search_exhausted: false,
                    inconclusive: false,
                    nodes: 0,
                });
            }
        }
    }
    Ok(backtrack(&nbr, node_limit, Method::CayleySearch))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim1 {
    pub non_bipartite: bool,
    pub vertex_determining: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim2 {
    pub automorphism: bool,
    pub involution: bool,
    pub fixes_set: bool,
    /// `σ(x) − x ∉ S` for every `x`.
    pub off_diagonal: bool,
    /// `σ(y) − x ∈ S ⇔ σ(x) − y ∈ S` for every pair.
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim3 {
    pub connected: bool,
    pub set_stabilizer_transitive: bool,
    pub arc_transitive: bool,
    pub compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Thm3Certificate {
    pub l: u64,
    pub m: u64,
    pub n: u64,
    pub t: u64,
    pub set: Vec<u64>,
    pub t_solves: bool,
    pub claim1: Claim1,
    pub claim2: Claim2,
    pub claim3: Claim3,
    pub compatibility: CompatibilityResult,
    pub status: Status,
    pub stable: bool,
    pub all_pass: bool,
}

/// Build `S = {±1, ±t}` in `Z_{ℓm}` with `t ≡ −1 (mod ℓ)`, `t ≡ 1 (mod m)`
/// and verify each claimed property.
pub fn thm3_certificate(l: u64, m: u64) -> Result<Thm3Certificate> {
    for (name, v) in [("l", l), ("m", m)] {
        if v <= 1 {
            return Err(Error::InvalidParameter(format!("{name} must exceed 1, got {v}")));
        }
        if v % 2 == 0 {
            return Err(Error::InvalidParameter(format!("{name} must be odd, got {v}")));
        }
    }
    if gcd(l, m) != 1 {
        return Err(Error::NotCoprime(l, m));
    }
    let n = l * m;
    let t = crt_solve(-1, l, 1, m)?;
    let t_solves = t % l == l - 1 && t % m == 1 % m;
    let mut set = vec![1, n - 1, t, n - t];
    set.sort_unstable();
    set.dedup();
    let signed: Vec<i64> = set.iter().map(|&x| x as i64).collect();
    let graph = circulant(n, &signed)?;
    let group = AbelianGroup::cyclic(n as i64)?;
    let elems: Vec<GroupElement> = set.iter().map(|&x| GroupElement(vec![x])).collect();

    let member = |x: u64| set.contains(&(x % n));
    let sigma = |x: u64| (t as u128 * x as u128 % n as u128) as u64;
    let claim1 = Claim1 {
        non_bipartite: !is_bipartite(&graph),
        vertex_determining: is_vertex_determining(&graph),
    };
    let claim2 = Claim2 {
        automorphism: gcd(t, n) == 1,
        involution: sigma(t) == 1 % n,
        fixes_set: set.iter().all(|&s| member(sigma(s))),
        off_diagonal: (0..n).all(|x| !member(sigma(x) + n - x)),
        symmetric: (0..n).all(|x| (0..n).all(|y| member(sigma(y) + n - x) == member(sigma(x) + n - y))),
    };
    let sigma_perm = Permutation::from_images((0..n).map(|x| sigma(x) as usize).collect())?;
    let compatible = verify_witness(&graph, &sigma_perm);
    let compatibility = CompatibilityResult {
        compatible,
        witness: compatible.then_some(sigma_perm),
        method: Method::Certificate,
        search_exhausted: false,
        inconclusive: false,
        nodes: 0,
    };
    let claim3 = Claim3 {
        connected: is_connected(&graph),
        set_stabilizer_transitive: sufficient_arc_transitivity(&group, &elems)?,
        arc_transitive: is_arc_transitive(&graph)?,
        compatible,
    };
    let status = classify(&graph)?.status;
    let stable = status == Status::Stable;
    let all_pass = t_solves
        && set.len() == 4
        && claim1.non_bipartite
        && claim1.vertex_determining
        && claim2.automorphism
        && claim2.involution
        && claim2.fixes_set
        && claim2.off_diagonal
        && claim2.symmetric
        && claim3.connected
        && claim3.set_stabilizer_transitive
        && claim3.arc_transitive
        && claim3.compatible
        && stable;
    Ok(Thm3Certificate {
        l,
        m,
        n,
        t,
        set,
        t_solves,
        claim1,
        claim2,
        claim3,
        compatibility,
        status,
        stable,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    fn cyc(n: u64, s: &[u64]) -> (AbelianGroup, Vec<GroupElement>) {
        (
            AbelianGroup::cyclic(n as i64).unwrap(),
            s.iter().map(|&x| GroupElement(vec![x])).collect(),
        )
    }

    #[test]
    fn matrix_examples() {
        let r = compatible_matrix_search(&complete(3), DEFAULT_NODE_LIMIT);
        assert!(!r.compatible && r.search_exhausted);
        let g = circulant(24, &[2, 3, 8, 9, 10, 14, 15, 16, 21, 22]).unwrap();
        let r = compatible_matrix_search(&g, DEFAULT_NODE_LIMIT);
        assert!(r.compatible);
        assert!(verify_witness(&g, r.witness.as_ref().unwrap()));
        let g = circulant(15, &[1, 4, 11, 14]).unwrap();
        let times11 = Permutation::from_images((0..15).map(|x| x * 11 % 15).collect()).unwrap();
        assert!(verify_witness(&g, &times11));
        assert!(compatible_matrix_search(&g, DEFAULT_NODE_LIMIT).compatible);
    }

    #[test]
    fn cayley_examples() {
        let (g, s) = cyc(15, &[1, 4, 11, 14]);
        let r = compatible_cayley_search(&g, &s, DEFAULT_NODE_LIMIT).unwrap();
        assert!(r.compatible);
        let (g, s) = cyc(3, &[1, 2]);
        let r = compatible_cayley_search(&g, &s, DEFAULT_NODE_LIMIT).unwrap();
        assert!(!r.compatible && r.search_exhausted);
        let (g, s) = cyc(4, &[1, 3]);
        assert!(compatible_cayley_search(&g, &s, DEFAULT_NODE_LIMIT).unwrap().compatible);
    }

    #[test]
    fn node_limit_is_inconclusive() {
        let r = compatible_matrix_search(&complete(6), 3);
        assert!(r.inconclusive && !r.search_exhausted);
        assert_eq!(r.decided(), None);
    }

    #[test]
    fn certificates() {
        for (l, m, t) in [(3, 5, 11), (3, 7, 8), (5, 7, 29)] {
            let c = thm3_certificate(l, m).unwrap();
            assert_eq!(c.t, t);
            assert!(c.all_pass, "{c:?}");
        }
        assert_eq!(thm3_certificate(3, 5).unwrap().set, [1, 4, 11, 14]);
        assert!(thm3_certificate(3, 9).is_err());
        assert!(thm3_certificate(4, 5).is_err());
        assert!(thm3_certificate(1, 5).is_err());
    }
}
