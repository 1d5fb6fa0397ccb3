#![allow(dead_code)]

use circstab::abelian::{AbelianGroup, GroupElement};
use circstab::graph::{circulant, Graph};
use circstab::survey::enumerate_connection_sets;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.gen_bool(p)).collect();
    graph_from_bits(n, &bits)
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Every circulant of order `n`, with its connection set.
pub fn circulants(n: u64) -> Vec<(Vec<u64>, Graph)> {
    enumerate_connection_sets(n)
        .into_iter()
        .map(|s| {
            let signed: Vec<i64> = s.iter().map(|&x| x as i64).collect();
            let g = circulant(n, &signed).unwrap();
            (s, g)
        })
        .collect()
}

pub fn cyclic_elems(s: &[u64]) -> Vec<GroupElement> {
    s.iter().map(|&x| GroupElement(vec![x])).collect()
}

pub fn cyclic(n: u64) -> AbelianGroup {
    AbelianGroup::cyclic(n as i64).unwrap()
}

/// Independent automorphism count: extend a partial map vertex by vertex in
/// breadth-first order, keeping adjacency to already-mapped vertices consistent.
pub fn count_automorphisms(g: &Graph) -> u64 {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        order.push(root);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for v in g.neighbors(u).iter() {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }

    fn rec(g: &Graph, order: &[usize], k: usize, map: &mut [Option<usize>], used: &mut [bool]) -> u64 {
        if k == order.len() {
            return 1;
        }
        let u = order[k];
        let mut total = 0;
        for x in 0..g.order() {
            if used[x] || g.degree(x) != g.degree(u) {
                continue;
            }
            let consistent = order[..k].iter().all(|&w| g.has_edge(u, w) == g.has_edge(x, map[w].unwrap()));
            if consistent {
                map[u] = Some(x);
                used[x] = true;
                total += rec(g, order, k + 1, map, used);
                used[x] = false;
                map[u] = None;
            }
        }
        total
    }
    rec(g, &order, 0, &mut vec![None; n], &mut vec![false; n])
}
