//! Connection-set enumeration by negation orbits.

use crate::abelian::{abelian_groups_of_order, automorphisms, units_mod, AbelianGroup, GroupElement};
use crate::error::Result;
use crate::limits;

/// Largest group order accepted by [`enumerate_abelian_cayley`].
pub const DEFAULT_ABELIAN_ORDER_CAP: usize = 27;

/// All nonempty subsets of the orbit list, by increasing bitmask.
fn subsets_of_orbits<T: Clone + Ord>(orbits: &[Vec<T>]) -> Vec<Vec<T>> {
    let k = orbits.len();
    assert!(k < 63, "too many negation orbits");
    (1u64..1 << k)
        .map(|mask| {
            let mut set: Vec<T> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| orbits[i].iter().cloned())
                .collect();
            set.sort();
            set
        })
        .collect()
}

/// Negation orbits `{s, −s}` for `1 ≤ s ≤ n/2`.
pub fn negation_orbits(n: u64) -> Vec<Vec<u64>> {
    (1..=n / 2)
        .map(|s| if 2 * s == n { vec![s] } else { vec![s, n - s] })
        .collect()
}

/// Every nonempty inverse-closed subset of `Z_n ∖ {0}`; there are
/// `2^⌈(n−1)/2⌉ − 1` of them.
pub fn enumerate_connection_sets(n: u64) -> Vec<Vec<u64>> {
    subsets_of_orbits(&negation_orbits(n))
}

/// Negation orbits of the nonzero elements, ordered by least member.
pub fn group_negation_orbits(group: &AbelianGroup) -> Vec<Vec<GroupElement>> {
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut out = Vec::new();
    for (i, x) in group.elements().enumerate() {
        if seen[i] {
            continue;
        }
        let y = group.neg(&x);
        let j = group.index_of(&y);
        seen[i] = true;
        seen[j] = true;
        out.push(if i == j { vec![x] } else { vec![x, y] });
    }
    out
}

/// Every abelian group of the given order with each of its connection sets.
pub fn enumerate_abelian_cayley(order: u64) -> Result<Vec<(AbelianGroup, Vec<GroupElement>)>> {
    limits::check("abelian survey order", order as usize, DEFAULT_ABELIAN_ORDER_CAP)?;
    let mut out = Vec::new();
    for group in abelian_groups_of_order(order) {
        if group.order() < 2 {
            continue;
        }
        for set in subsets_of_orbits(&group_negation_orbits(&group)) {
            out.push((group.clone(), set));
        }
    }
    Ok(out)
}

/// Is `set` the least member of its orbit under group automorphisms
/// (multiplication by units in the cyclic case)?
pub fn is_orbit_representative(group: &AbelianGroup, set: &[GroupElement]) -> Result<bool> {
    let mut idx: Vec<usize> = set.iter().map(|s| group.index_of(s)).collect();
    idx.sort_unstable();
    let images: Vec<Vec<usize>> = match group.cyclic_order() {
        Some(n) => units_mod(n)
            .into_iter()
            .map(|g| (0..n).map(|x| (g * x % n) as usize).collect())
            .collect(),
        None => automorphisms(group)?
            .into_iter()
            .map(|a| a.as_permutation().to_vec())
            .collect(),
    };
    for perm in images {
        let mut img: Vec<usize> = idx.iter().map(|&i| perm[i]).collect();
        img.sort_unstable();
        if img < idx {
            return Ok(false);
        }
    }
    Ok(true)
}
