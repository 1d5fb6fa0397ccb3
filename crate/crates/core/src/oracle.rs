//! Exhaustive reference algorithms for cross-checking on tiny inputs.

use std::collections::HashSet;

use crate::autgroup::Permutation;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits;

pub const MAX_ISOMORPHISM_VERTICES: usize = 10;
pub const MAX_AUTOMORPHISM_VERTICES: usize = 8;
pub const MAX_CLOSURE_ELEMENTS: usize = 1 << 20;

/// Visit every bijection `a -> b` extending a partial map that keeps
/// adjacency consistent; `f` returns `false` to stop early.
fn for_each_isomorphism(a: &Graph, b: &Graph, f: &mut dyn FnMut(&[usize]) -> bool) {
    let n = a.order();
    if n != b.order() {
        return;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        a: &Graph,
        b: &Graph,
        u: usize,
        map: &mut [usize],
        used: &mut [bool],
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = a.order();
        if u == n {
            return f(map);
        }
        for x in 0..n {
            if used[x] || a.degree(u) != b.degree(x) {
                continue;
            }
            if (0..u).any(|w| a.has_edge(u, w) != b.has_edge(x, map[w])) {
                continue;
            }
            map[u] = x;
            used[x] = true;
            let go_on = rec(a, b, u + 1, map, used, f);
            used[x] = false;
            map[u] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(a, b, 0, &mut map, &mut used, f);
}

pub fn brute_force_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    limits::check("brute-force isomorphism vertices", a.order().max(b.order()), MAX_ISOMORPHISM_VERTICES)?;
    let mut found = false;
    for_each_isomorphism(a, b, &mut |_| {
        found = true;
        false
    });
    Ok(found)
}

/// Number of edge-preserving permutations.
pub fn brute_force_automorphism_count(g: &Graph) -> Result<u64> {
    limits::check("brute-force automorphism vertices", g.order(), MAX_AUTOMORPHISM_VERTICES)?;
    let mut count = 0;
    for_each_isomorphism(g, g, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Order of `⟨generators⟩` by breadth-first closure.
pub fn closure_order(generators: &[Permutation]) -> Result<u64> {
    let Some(first) = generators.first() else {
        return Ok(1);
    };
    let n = first.degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(g.degree(), n));
    }
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                limits::check("closure elements", seen.len(), MAX_CLOSURE_ELEMENTS)?;
                frontier.push(q);
            }
        }
    }
    Ok(seen.len() as u64)
}
