//! Direct, lexicographic and Cartesian products.
//!
//! All three use row-major pair indexing: `(u, x) ↦ u·|Γ| + x`.

use super::{are_isomorphic, complete, edgeless, Graph};
use crate::error::{Error, Result};

fn pair_labels(a: &Graph, b: &Graph) -> Vec<String> {
    let mut out = Vec::with_capacity(a.order() * b.order());
    for u in 0..a.order() {
        for x in 0..b.order() {
            out.push(format!("({},{})", a.label(u), b.label(x)));
        }
    }
    out
}

fn product_by(a: &Graph, b: &Graph, adjacent: impl Fn(usize, usize, usize, usize) -> bool) -> Graph {
    let m = b.order();
    let mut g = Graph::new(a.order() * m);
    for u in 0..a.order() {
        for x in 0..m {
            for v in 0..a.order() {
                for y in 0..m {
                    let (i, j) = (u * m + x, v * m + y);
                    if i < j && adjacent(u, x, v, y) {
                        g.add_edge(i, j);
                    }
                }
            }
        }
    }
    g.with_labels(pair_labels(a, b))
}

/// `Σ × Γ`: `(u,x) ~ (v,y)` iff `u ~ v` and `x ~ y`.
pub fn direct_product(sigma: &Graph, gamma: &Graph) -> Graph {
    product_by(sigma, gamma, |u, x, v, y| sigma.has_edge(u, v) && gamma.has_edge(x, y))
}

/// `Σ[Γ]`: `(u,x) ~ (v,y)` iff `u ~ v`, or `u = v` and `x ~ y`.
pub fn lexicographic_product(sigma: &Graph, gamma: &Graph) -> Graph {
    product_by(sigma, gamma, |u, x, v, y| {
        sigma.has_edge(u, v) || (u == v && gamma.has_edge(x, y))
    })
}

/// `Σ □ Γ`: `(u,x) ~ (v,y)` iff `u ~ v` and `x = y`, or `u = v` and `x ~ y`.
pub fn cartesian_product(sigma: &Graph, gamma: &Graph) -> Graph {
    product_by(sigma, gamma, |u, x, v, y| {
        (sigma.has_edge(u, v) && x == y) || (u == v && gamma.has_edge(x, y))
    })
}

/// Checks `Σ × K_d ≅ Σ[K̄_d] − dΣ`, where the `d` removed copies of `Σ` are the
/// layers `{(u, x) : u ∈ V(Σ)}` for each fixed `x`.
pub fn minus_product_identity_check(sigma: &Graph, d: usize) -> Result<bool> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d must exceed 1, got {d}")));
    }
    let left = direct_product(sigma, &complete(d));
    let mut right = lexicographic_product(sigma, &edgeless(d));
    for (u, v) in sigma.edges() {
        for x in 0..d {
            right.remove_edge(u * d + x, v * d + x);
        }
    }
    are_isomorphic(&left, &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, is_vertex_determining};

    #[test]
    fn direct_products() {
        let c6 = cycle(6).unwrap();
        assert!(are_isomorphic(&direct_product(&complete(3), &complete(2)), &c6).unwrap());
        let c10 = cycle(10).unwrap();
        assert!(are_isomorphic(&direct_product(&cycle(5).unwrap(), &complete(2)), &c10).unwrap());
        let s = cycle(5).unwrap();
        assert_eq!(direct_product(&s, &edgeless(1)), edgeless(5));
    }

    #[test]
    fn lexicographic_products() {
        let k33 = complete_bipartite(3, 3);
        assert!(are_isomorphic(&lexicographic_product(&complete(2), &edgeless(3)), &k33).unwrap());
        let s = cycle(5).unwrap();
        assert_eq!(lexicographic_product(&s, &edgeless(1)), s);
        let c4 = lexicographic_product(&complete(2), &edgeless(2));
        assert!(are_isomorphic(&c4, &cycle(4).unwrap()).unwrap());
        assert!(!is_vertex_determining(&c4));
    }

    #[test]
    fn cartesian_products() {
        let sq = cartesian_product(&complete(2), &complete(2));
        assert!(are_isomorphic(&sq, &cycle(4).unwrap()).unwrap());
        let prism = cartesian_product(&cycle(3).unwrap(), &complete(2));
        assert_eq!((prism.order(), prism.edge_count()), (6, 9));
        assert_eq!(cartesian_product(&cycle(5).unwrap(), &complete(3)).order(), 15);
    }

    #[test]
    fn minus_product_identity() {
        assert!(minus_product_identity_check(&cycle(5).unwrap(), 2).unwrap());
        assert!(minus_product_identity_check(&complete(3), 3).unwrap());
        assert!(minus_product_identity_check(&edgeless(2), 2).unwrap());
        assert!(minus_product_identity_check(&complete(3), 1).is_err());
    }

    #[test]
    fn kn_times_k2_is_knn_minus_matching() {
        for n in 3..=6 {
            let mut knn = complete_bipartite(n, n);
            for u in 0..n {
                knn.remove_edge(u, n + u);
            }
            let prod = direct_product(&complete(n), &complete(2));
            assert!(are_isomorphic(&prod, &knn).unwrap());
        }
    }
}
