//! Stability of a graph with respect to its canonical double cover.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::autgroup::{automorphism_group, automorphism_group_colored, PermGroup, Permutation};
use crate::error::Result;
use crate::graph::{double_cover, is_bipartite, is_connected, is_vertex_determining, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Stable,
    TriviallyUnstable,
    NontriviallyUnstable,
}

impl Status {
    pub fn is_stable(self) -> bool {
        self == Status::Stable
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Stable => "stable",
            Status::TriviallyUnstable => "trivially_unstable",
            Status::NontriviallyUnstable => "nontrivially_unstable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrivialReason {
    Disconnected,
    Bipartite,
    NotVertexDetermining,
}

/// Permutations with `u ~ v ⇔ α(u) ~ β(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TfPair {
    pub alpha: Permutation,
    pub beta: Permutation,
}

mod big_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityVerdict {
    pub status: Status,
    #[serde(with = "big_string")]
    pub aut_order: BigUint,
    #[serde(with = "big_string")]
    pub dcover_aut_order: BigUint,
    pub trivial_reasons: Vec<TrivialReason>,
    pub tf_witness: Option<TfPair>,
}

/// A verdict together with the structure flags and groups it came from.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub verdict: StabilityVerdict,
    pub connected: bool,
    pub bipartite: bool,
    pub vertex_determining: bool,
    pub aut: PermGroup,
    pub dcover_aut: PermGroup,
}

pub fn is_stable(graph: &Graph) -> Result<bool> {
    let aut = automorphism_group(graph)?;
    let daut = automorphism_group(&double_cover(graph))?;
    Ok(daut.order() == aut.order() * 2u32)
}

pub fn classify(graph: &Graph) -> Result<StabilityVerdict> {
    Ok(analyze(graph)?.verdict)
}

pub fn analyze(graph: &Graph) -> Result<Analysis> {
    let dcover = double_cover(graph);
    let aut = automorphism_group(graph)?;
    let dcover_aut = automorphism_group(&dcover)?;
    let connected = is_connected(graph);
    let bipartite = is_bipartite(graph);
    let vertex_determining = is_vertex_determining(graph);
    let stable = dcover_aut.order() == aut.order() * 2u32;
    let mut reasons = Vec::new();
    let mut witness = None;
    if !stable {
        if !connected {
            reasons.push(TrivialReason::Disconnected);
        }
        if bipartite && aut.order() > BigUint::from(1u32) {
            reasons.push(TrivialReason::Bipartite);
        }
        if !vertex_determining {
            reasons.push(TrivialReason::NotVertexDetermining);
        }
        witness = extract_witness(graph, &dcover, &dcover_aut)?;
    }
    let status = match (stable, reasons.is_empty()) {
        (true, _) => Status::Stable,
        (false, true) => Status::NontriviallyUnstable,
        (false, false) => Status::TriviallyUnstable,
    };
    Ok(Analysis {
        verdict: StabilityVerdict {
            status,
            aut_order: aut.order(),
            dcover_aut_order: dcover_aut.order(),
            trivial_reasons: reasons,
            tf_witness: witness,
        },
        connected,
        bipartite,
        vertex_determining,
        aut,
        dcover_aut,
    })
}

/// A two-fold automorphism `(α, β)` with `α ≠ β`, or `None` when none exists.
pub fn tf_witness(graph: &Graph) -> Result<Option<TfPair>> {
    let dcover = double_cover(graph);
    let daut = automorphism_group(&dcover)?;
    extract_witness(graph, &dcover, &daut)
}

/// Read `(α, β)` off an automorphism of the double cover.
fn split_layers(n: usize, g: &Permutation) -> TfPair {
    let swaps = n > 0 && g.apply(0) >= n;
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    for u in 0..n {
        let (a, b) = (g.apply(u), g.apply(u + n));
        if swaps {
            alpha.push(a - n);
            beta.push(b);
        } else {
            alpha.push(a);
            beta.push(b - n);
        }
    }
    TfPair {
        alpha: Permutation::from_images_unchecked(alpha),
        beta: Permutation::from_images_unchecked(beta),
    }
}

fn preserves_layers(n: usize, g: &Permutation) -> bool {
    let side = |x: usize| x >= n;
    (0..2 * n).all(|x| side(x) == side(g.apply(x))) || (0..2 * n).all(|x| side(x) != side(g.apply(x)))
}

fn extract_witness(graph: &Graph, dcover: &Graph, daut: &PermGroup) -> Result<Option<TfPair>> {
    let n = graph.order();
    let first = daut
        .generators()
        .iter()
        .filter(|g| preserves_layers(n, g))
        .map(|g| split_layers(n, g))
        .find(|p| p.alpha != p.beta);
    if let Some(p) = first {
        debug_assert!(verify_tf_pair(graph, &p.alpha, &p.beta));
        return Ok(Some(p));
    }
    let layers: Vec<usize> = (0..2 * n).map(|x| x / n.max(1)).collect();
    let fixed = automorphism_group_colored(dcover, Some(&layers))?;
    let found = fixed
        .generators()
        .iter()
        .map(|g| split_layers(n, g))
        .find(|p| p.alpha != p.beta);
    debug_assert!(found.iter().all(|p| verify_tf_pair(graph, &p.alpha, &p.beta)));
    Ok(found)
}

/// Does `u ~ v ⇔ α(u) ~ β(v)` hold for every ordered pair?
pub fn verify_tf_pair(graph: &Graph, alpha: &Permutation, beta: &Permutation) -> bool {
    let n = graph.order();
    if alpha.degree() != n || beta.degree() != n {
        return false;
    }
    (0..n).all(|u| (0..n).all(|v| graph.has_edge(u, v) == graph.has_edge(alpha.apply(u), beta.apply(v))))
}
