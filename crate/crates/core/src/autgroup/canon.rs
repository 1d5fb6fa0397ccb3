//! Canonical labelling by exhaustive search with automorphism pruning.

use super::partition::Partition;
use super::perm::Permutation;
use super::schreier::StabChain;
use super::search::{root_partition, search, UnionFind};
use crate::error::Result;
use crate::graph::Graph;
use crate::limits;

/// An isomorphism invariant that determines the (coloured) graph up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    colors: Vec<usize>,
    rows: Vec<u64>,
}

/// Canonical form plus the labelling `vertex -> canonical index` realising it.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: CanonicalForm,
    pub labelling: Vec<usize>,
}

pub fn canonical_form(graph: &Graph) -> Result<Canonical> {
    canonical_form_colored(graph, None)
}

pub fn canonical_form_colored(graph: &Graph, colors: Option<&[usize]>) -> Result<Canonical> {
    let n = graph.order();
    limits::check("isomorphism test vertices", n, limits::isomorphism_cap())?;
    if let Some(c) = colors {
        if c.len() != n {
            return Err(crate::Error::DegreeMismatch(c.len(), n));
        }
    }
    let mut sorted_colors: Vec<usize> = colors.map(<[usize]>::to_vec).unwrap_or_else(|| vec![0; n]);
    sorted_colors.sort_unstable();
    let aut = search(graph, colors);
    let mut best: Option<(u64, Vec<u64>, Vec<usize>)> = None;
    explore(graph, root_partition(graph, colors), &aut.generators, &mut best);
    let (_, rows, elems) = best.unwrap_or_default();
    let mut labelling = vec![0; n];
    for (j, &v) in elems.iter().enumerate() {
        labelling[v] = j;
    }
    Ok(Canonical {
        form: CanonicalForm {
            n,
            colors: sorted_colors,
            rows,
        },
        labelling,
    })
}

fn certificate(graph: &Graph, leaf: &Partition) -> Vec<u64> {
    let n = graph.order();
    let words = n.div_ceil(64);
    let mut pos = vec![0; n];
    for (j, &v) in leaf.elems().iter().enumerate() {
        pos[v] = j;
    }
    let mut rows = vec![0u64; n * words];
    for (j, &v) in leaf.elems().iter().enumerate() {
        for u in graph.neighbors(v).iter() {
            let k = pos[u];
            rows[j * words + k / 64] |= 1 << (k % 64);
        }
    }
    rows
}

fn explore(
    graph: &Graph,
    node: Partition,
    stabilizer: &[Permutation],
    best: &mut Option<(u64, Vec<u64>, Vec<usize>)>,
) {
    let Some(t) = node.target_cell() else {
        let cert = certificate(graph, &node);
        let better = match best {
            None => true,
            Some((trace, rows, _)) => (node.trace, cert.as_slice()) < (*trace, rows.as_slice()),
        };
        if better {
            *best = Some((node.trace, cert, node.elems().to_vec()));
        }
        return;
    };
    let mut cell: Vec<usize> = node.cell(t).to_vec();
    cell.sort_unstable();
    let mut orbits = UnionFind::new(graph.order());
    for g in stabilizer {
        orbits.absorb(g);
    }
    let mut seen = Vec::new();
    for w in cell {
        let r = orbits.find(w);
        if seen.contains(&r) {
            continue;
        }
        seen.push(r);
        let child_stab = if stabilizer.is_empty() {
            Vec::new()
        } else {
            StabChain::new(graph.order(), stabilizer, &[w]).stabilizer_generators(1)
        };
        explore(graph, node.individualize(w, graph), &child_stab, best);
    }
}

/// Isomorphism test by canonical form comparison.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    let cap = limits::isomorphism_cap();
    limits::check("isomorphism test vertices", a.order(), cap)?;
    limits::check("isomorphism test vertices", b.order(), cap)?;
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da: Vec<usize> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_form(a)?.form == canonical_form(b)?.form)
}
