mod common;

use circstab::abelian::{automorphisms, crt_solve, gcd, reduce, units_mod, AbelianGroup};
use circstab::autgroup::{automorphism_group, canonical_form, are_isomorphic, Permutation};
use circstab::graph::{
    circulant, complete, components, direct_product, double_cover, double_cover_as_circulant, edgeless,
    is_bipartite, is_connected, is_vertex_determining, lexicographic_product, minus_product_identity_check,
};
use circstab::oracle::closure_order;
use circstab::skeleton::{boolean_square, cartesian_skeleton};
use circstab::stability::{tf_witness, verify_tf_pair};
use circstab::wilson;
use common::{arb_graph, count_automorphisms};
use num_bigint::BigUint;
use proptest::prelude::*;

fn arb_circulant(max_n: u64) -> impl Strategy<Value = (u64, Vec<u64>)> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), (n / 2) as usize).prop_filter_map("empty set", move |bits| {
            let mut s = Vec::new();
            for (i, &b) in bits.iter().enumerate() {
                let x = i as u64 + 1;
                if b {
                    s.push(x);
                    if x != n - x {
                        s.push(n - x);
                    }
                }
            }
            if s.is_empty() {
                None
            } else {
                s.sort_unstable();
                Some((n, s))
            }
        })
    })
}

fn signed(s: &[u64]) -> Vec<i64> {
    s.iter().map(|&x| x as i64).collect()
}

fn is_subgraph(a: &circstab::graph::Graph, b: &circstab::graph::Graph) -> bool {
    a.edges().iter().all(|&(u, v)| b.has_edge(u, v))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn aut_order_matches_backtracking_count(g in arb_graph(7)) {
        let aut = automorphism_group(&g).unwrap();
        prop_assert_eq!(aut.order(), BigUint::from(count_automorphisms(&g)));
        for gen in aut.generators() {
            prop_assert!(g.is_automorphism(gen.images()));
        }
    }

    #[test]
    fn schreier_sims_matches_closure(g in arb_graph(8)) {
        let aut = automorphism_group(&g).unwrap();
        let closure = closure_order(aut.generators()).unwrap();
        prop_assert_eq!(aut.order(), BigUint::from(closure));
    }

    #[test]
    fn canonical_form_is_relabelling_invariant((g, p) in arb_graph(9).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), arb_perm(n))
    })) {
        let h = g.relabel(&p);
        prop_assert_eq!(canonical_form(&g).unwrap().form, canonical_form(&h).unwrap().form);
        prop_assert!(are_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn isomorphism_agrees_with_brute_force(a in arb_graph(6), b in arb_graph(6)) {
        let fast = are_isomorphic(&a, &b).unwrap();
        let slow = a.order() == b.order() && brute_iso(&a, &b);
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn double_cover_group_contains_product(g in arb_graph(7)) {
        let aut = automorphism_group(&g).unwrap().order();
        let daut = automorphism_group(&double_cover(&g)).unwrap().order();
        let twice: BigUint = aut * 2u32;
        prop_assert_eq!(&daut % &twice, BigUint::from(0u32));
    }

    #[test]
    fn double_cover_connectivity(g in arb_graph(9)) {
        let d = double_cover(&g);
        prop_assert!(is_bipartite(&d));
        prop_assert_eq!(d.edge_count(), 2 * g.edge_count());
        if g.order() >= 2 {
            prop_assert_eq!(is_connected(&d), is_connected(&g) && !is_bipartite(&g));
        }
        let comps = components(&d);
        prop_assert_eq!(comps.len(), d.order());
    }

    #[test]
    fn vertex_determining_product_law(a in arb_graph(4), b in arb_graph(4)) {
        // isolated vertices all share the empty neighbourhood in the product
        prop_assume!(no_isolated(&a) && no_isolated(&b));
        let p = direct_product(&a, &b);
        prop_assert_eq!(
            is_vertex_determining(&p),
            is_vertex_determining(&a) && is_vertex_determining(&b)
        );
    }

    #[test]
    fn lexicographic_blowup_is_not_vertex_determining(a in arb_graph(5), d in 2usize..4) {
        prop_assume!(a.edge_count() > 0);
        prop_assert!(!is_vertex_determining(&lexicographic_product(&a, &edgeless(d))));
    }

    #[test]
    fn minus_product_identity(a in arb_graph(6), d in 2usize..=3) {
        prop_assert!(minus_product_identity_check(&a, d).unwrap());
    }

    #[test]
    fn skeleton_inside_boolean_square_and_invariant(g in arb_graph(8)) {
        let bs = boolean_square(&g);
        let sk = cartesian_skeleton(&g);
        prop_assert!(is_subgraph(&sk, &bs));
        for gen in automorphism_group(&g).unwrap().generators() {
            prop_assert!(bs.is_automorphism(gen.images()));
            prop_assert!(sk.is_automorphism(gen.images()));
        }
    }

    #[test]
    fn tf_witnesses_verify(g in arb_graph(7)) {
        if let Some(p) = tf_witness(&g).unwrap() {
            prop_assert!(p.alpha != p.beta);
            prop_assert!(verify_tf_pair(&g, &p.alpha, &p.beta));
        }
    }

    #[test]
    fn translations_are_automorphisms((n, s) in arb_circulant(30), c in 0u64..30) {
        let g = circulant(n, &signed(&s)).unwrap();
        let shift: Vec<usize> = (0..n).map(|x| ((x + c) % n) as usize).collect();
        prop_assert!(g.is_automorphism(&shift));
        let neg: Vec<usize> = (0..n).map(|x| ((n - x) % n) as usize).collect();
        prop_assert!(g.is_automorphism(&neg));
        for u in units_mod(n) {
            let mult: Vec<usize> = (0..n).map(|x| ((u * x) % n) as usize).collect();
            let image: Vec<u64> = s.iter().map(|&x| (u * x) % n).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            prop_assert_eq!(g.is_automorphism(&mult), sorted == s);
        }
    }

    #[test]
    fn odd_double_cover_is_circulant((n, s) in arb_circulant(15)) {
        prop_assume!(n % 2 == 1);
        let (m, t) = double_cover_as_circulant(n, &signed(&s)).unwrap();
        prop_assert_eq!(m, 2 * n);
        let lifted = circulant(m, &signed(&t)).unwrap();
        let d = double_cover(&circulant(n, &signed(&s)).unwrap());
        prop_assert!(are_isomorphic(&lifted, &d).unwrap());
    }

    #[test]
    fn wilson_reports_are_consistent((n, s) in arb_circulant(40)) {
        let r = wilson::check_all(n, &signed(&s)).unwrap();
        if r.c2prime.holds {
            prop_assert!(r.c2.holds);
        }
        if n % 2 == 1 {
            prop_assert!(!r.any && !r.any_corrected);
        }
        if let Some(a) = r.c1.a {
            prop_assert!(wilson::c1_holds_with(n, &s, a));
        }
        for &b in &r.c2.all_b {
            prop_assert!(wilson::c2_holds_with(n, &s, b));
        }
        for &b in &r.c2prime.all_b {
            prop_assert!(wilson::c2prime_holds_with(n, &s, b));
            prop_assert!(r.c2.all_b.contains(&b));
        }
        if let Some(h) = r.c3.h {
            prop_assert!(wilson::c3_holds_with(n, &s, h));
        }
        if let Some(g) = r.c4.g {
            prop_assert!(wilson::c4_holds_with(n, &s, g));
        }
        prop_assert_eq!(r.any, r.c1.holds || r.c2.holds || r.c3.holds || r.c4.holds);
    }

    #[test]
    fn cyclic_automorphisms_are_units(n in 1u64..40) {
        let group = AbelianGroup::cyclic(n as i64).unwrap();
        let auts = automorphisms(&group).unwrap();
        let units = units_mod(n);
        prop_assert_eq!(auts.len(), units.len());
        prop_assert_eq!(units.len() as u64, (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64);
        for a in &auts {
            let g = a.multiplier().unwrap();
            prop_assert!(units.contains(&(g % n.max(1))) || n == 1);
        }
    }

    #[test]
    fn group_arithmetic(factors in proptest::collection::vec(2i64..6, 1..=3), i in 0usize..1000, j in 0usize..1000) {
        let group = AbelianGroup::product(&factors).unwrap();
        let n = group.order();
        let (a, b) = (group.element_at(i % n), group.element_at(j % n));
        let sum = group.add(&a, &b);
        prop_assert_eq!(group.sub(&sum, &b), a.clone());
        prop_assert!(group.is_zero(&group.add(&a, &group.neg(&a))));
        prop_assert_eq!(group.index_of(&group.element_at(i % n)), i % n);
        // the order of every element divides the group order
        prop_assert!(group.is_zero(&group.scale(n as u64, &a)));
    }

    #[test]
    fn automorphisms_are_homomorphisms(factors in proptest::collection::vec(2i64..5, 1..=2), i in 0usize..100, j in 0usize..100) {
        let group = AbelianGroup::product(&factors).unwrap();
        let n = group.order();
        let (a, b) = (group.element_at(i % n), group.element_at(j % n));
        for phi in automorphisms(&group).unwrap() {
            let img = |e: &circstab::abelian::GroupElement| group.element_at(phi.apply_index(group.index_of(e)));
            prop_assert_eq!(img(&group.add(&a, &b)), group.add(&img(&a), &img(&b)));
        }
    }

    #[test]
    fn crt_solves_both_congruences(m1 in 1u64..60, m2 in 1u64..60, r1 in -100i64..100, r2 in -100i64..100) {
        match crt_solve(r1, m1, r2, m2) {
            Ok(t) => {
                prop_assert!(t < m1 * m2);
                prop_assert_eq!(t % m1, reduce(r1, m1));
                prop_assert_eq!(t % m2, reduce(r2, m2));
            }
            Err(_) => prop_assert!(gcd(m1, m2) != 1),
        }
    }
}

fn no_isolated(g: &circstab::graph::Graph) -> bool {
    (0..g.order()).all(|u| g.degree(u) > 0)
}

#[test]
fn isolated_vertex_breaks_product_law() {
    let k1 = complete(1);
    let k2 = complete(2);
    assert!(is_vertex_determining(&k1) && is_vertex_determining(&k2));
    assert!(!is_vertex_determining(&direct_product(&k1, &k2)));
}

#[test]
fn complete_graph_group_orders() {
    let mut fact = BigUint::from(1u32);
    for n in 1..=9u32 {
        fact *= n;
        assert_eq!(automorphism_group(&complete(n as usize)).unwrap().order(), fact);
    }
}

#[test]
fn identity_permutation_is_in_every_group() {
    let g = complete(4);
    let aut = automorphism_group(&g).unwrap();
    assert!(aut.contains(&Permutation::identity(4)));
}

fn brute_iso(a: &circstab::graph::Graph, b: &circstab::graph::Graph) -> bool {
    fn rec(a: &circstab::graph::Graph, b: &circstab::graph::Graph, u: usize, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if u == a.order() {
            return true;
        }
        for x in 0..b.order() {
            if !used[x] && (0..u).all(|w| a.has_edge(u, w) == b.has_edge(x, map[w])) {
                used[x] = true;
                map.push(x);
                if rec(a, b, u + 1, map, used) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
        }
        false
    }
    a.edge_count() == b.edge_count() && rec(a, b, 0, &mut Vec::new(), &mut vec![false; b.order()])
}
