//! Wilson's arithmetic instability conditions for circulants.
//!
//! All checks work on canonical representatives `0..n`, and parity refers to
//! the representative.

use serde::{Deserialize, Serialize};

use crate::abelian::{divisors, gcd, reduce, units_mod, AbelianGroup, GroupElement};
use crate::error::Result;
use crate::graph::cayley_graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Report {
    pub holds: bool,
    pub a: Option<u64>,
    pub vacuous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct C2Report {
    pub holds: bool,
    pub b: Option<u64>,
    pub vacuous: bool,
    /// Every odd divisor that works, ascending.
    pub all_b: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C3Report {
    pub holds: bool,
    /// `H = ⟨h⟩` with `h | n`.
    pub h: Option<u64>,
    pub r: Vec<u64>,
    pub d: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C4Report {
    pub holds: bool,
    pub g: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionReport {
    pub c1: C1Report,
    pub c2: C2Report,
    pub c2prime: C2Report,
    pub c3: C3Report,
    pub c4: C4Report,
    pub any: bool,
    pub any_corrected: bool,
}

struct Set {
    n: u64,
    elems: Vec<u64>,
    member: Vec<bool>,
}

impl Set {
    fn new(n: u64, s: &[u64]) -> Self {
        let mut elems: Vec<u64> = s.iter().map(|&x| x % n.max(1)).collect();
        elems.sort_unstable();
        elems.dedup();
        let mut member = vec![false; n as usize];
        for &x in &elems {
            member[x as usize] = true;
        }
        Set { n, elems, member }
    }

    fn has(&self, x: u64) -> bool {
        self.member[(x % self.n) as usize]
    }
}

/// `∀ even s ∈ S: s + a ∈ S` for an even divisor `2 ≤ a < n`.
pub fn c1_holds_with(n: u64, s: &[u64], a: u64) -> bool {
    if !n.is_multiple_of(2) || !a.is_multiple_of(2) || a < 2 || a >= n || !n.is_multiple_of(a) {
        return false;
    }
    let set = Set::new(n, s);
    set.elems.iter().filter(|&&x| x % 2 == 0).all(|&x| set.has(x + a))
}

pub fn check_c1(n: u64, s: &[u64]) -> C1Report {
    let vacuous = s.iter().all(|&x| !(x % n.max(1)).is_multiple_of(2));
    let a = if n.is_multiple_of(2) {
        divisors(n).into_iter().find(|&a| c1_holds_with(n, s, a))
    } else {
        None
    };
    C1Report {
        holds: a.is_some(),
        a,
        vacuous: a.is_some() && vacuous,
    }
}

/// `∀ odd s ∈ S: s + 2b ∈ S` for an odd divisor `b`, with `4 | n`.
pub fn c2_holds_with(n: u64, s: &[u64], b: u64) -> bool {
    if !n.is_multiple_of(4) || b.is_multiple_of(2) || !n.is_multiple_of(b) {
        return false;
    }
    let set = Set::new(n, s);
    set.elems.iter().filter(|&&x| x % 2 == 1).all(|&x| set.has(x + 2 * b))
}

/// The C.2 clause plus `s + b ∈ S` whenever `s ≡ 0` or `s ≡ −b (mod 4)`.
pub fn c2prime_holds_with(n: u64, s: &[u64], b: u64) -> bool {
    if !c2_holds_with(n, s, b) {
        return false;
    }
    let set = Set::new(n, s);
    let minus_b = (4 - b % 4) % 4;
    set.elems
        .iter()
        .filter(|&&x| x % 4 == 0 || x % 4 == minus_b)
        .all(|&x| set.has(x + b))
}

fn c2_family(n: u64, s: &[u64], test: fn(u64, &[u64], u64) -> bool) -> C2Report {
    let all_b: Vec<u64> = if n.is_multiple_of(4) {
        divisors(n).into_iter().filter(|&b| b % 2 == 1 && test(n, s, b)).collect()
    } else {
        Vec::new()
    };
    let vacuous = s.iter().all(|&x| (x % n.max(1)).is_multiple_of(2));
    C2Report {
        holds: !all_b.is_empty(),
        b: all_b.first().copied(),
        vacuous: !all_b.is_empty() && vacuous,
        all_b,
    }
}

pub fn check_c2(n: u64, s: &[u64]) -> C2Report {
    c2_family(n, s, c2_holds_with)
}

pub fn check_c2prime(n: u64, s: &[u64]) -> C2Report {
    c2_family(n, s, c2prime_holds_with)
}

/// `R` and `gcd(R)` for `H = ⟨h⟩`.
pub fn c3_data(n: u64, s: &[u64], h: u64) -> (Vec<u64>, u64) {
    let set = Set::new(n, s);
    let coset: Vec<u64> = (0..n / h).map(|k| k * h).collect();
    let r: Vec<u64> = set
        .elems
        .iter()
        .copied()
        .filter(|&j| !coset.iter().all(|&x| set.has(j + x)))
        .collect();
    let d = r.iter().fold(0, |acc, &j| gcd(acc, j));
    (r, d)
}

pub fn c3_holds_with(n: u64, s: &[u64], h: u64) -> bool {
    if !n.is_multiple_of(2) || h == 0 || !n.is_multiple_of(h) {
        return false;
    }
    let (r, d) = c3_data(n, s, h);
    !r.is_empty() && d > 1 && r.iter().all(|&j| (j / d) % 2 == 1)
}

pub fn check_c3(n: u64, s: &[u64]) -> C3Report {
    if n.is_multiple_of(2) {
        // subgroups from largest to smallest: ⟨1⟩ = Z_n first, {0} = ⟨n⟩ last
        for h in divisors(n) {
            if c3_holds_with(n, s, h) {
                let (r, d) = c3_data(n, s, h);
                return C3Report {
                    holds: true,
                    h: Some(h),
                    r,
                    d: Some(d),
                };
            }
        }
    }
    C3Report {
        holds: false,
        h: None,
        r: Vec::new(),
        d: None,
    }
}

pub fn c4_holds_with(n: u64, s: &[u64], g: u64) -> bool {
    if !n.is_multiple_of(2) || gcd(g, n) != 1 {
        return false;
    }
    let set = Set::new(n, s);
    set.elems.iter().all(|&x| set.has((g * x) % n + n / 2))
}

pub fn check_c4(n: u64, s: &[u64]) -> C4Report {
    let g = if n.is_multiple_of(2) {
        units_mod(n).into_iter().find(|&g| c4_holds_with(n, s, g))
    } else {
        None
    };
    C4Report { holds: g.is_some(), g }
}

/// Validate `(n, S)` as a circulant and run every check.
pub fn check_all(n: u64, set: &[i64]) -> Result<ConditionReport> {
    let group = AbelianGroup::cyclic(n as i64)?;
    let s: Vec<u64> = set.iter().map(|&x| reduce(x, n)).collect();
    let elems: Vec<GroupElement> = s.iter().map(|&x| GroupElement(vec![x])).collect();
    cayley_graph(&group, &elems)?;
    Ok(report(n, &s))
}

/// Run every check on canonical representatives without validation.
pub fn report(n: u64, s: &[u64]) -> ConditionReport {
    let c1 = check_c1(n, s);
    let c2 = check_c2(n, s);
    let c2prime = check_c2prime(n, s);
    let c3 = check_c3(n, s);
    let c4 = check_c4(n, s);
    let any = c1.holds || c2.holds || c3.holds || c4.holds;
    let any_corrected = c1.holds || c2prime.holds || c3.holds || c4.holds;
    ConditionReport {
        c1,
        c2,
        c2prime,
        c3,
        c4,
        any,
        any_corrected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S24: [u64; 10] = [2, 3, 8, 9, 10, 14, 15, 16, 21, 22];

    #[test]
    fn c1_examples() {
        assert_eq!(check_c1(8, &[2, 3, 5, 6]).a, Some(4));
        assert!(!check_c1(12, &[3, 4, 8, 9]).holds);
        assert!(!check_c1(24, &S24).holds);
        let v = check_c1(8, &[1, 7]);
        assert!(v.holds && v.vacuous);
    }

    #[test]
    fn c2_examples() {
        let r = check_c2(12, &[3, 4, 8, 9]);
        assert!(r.holds && r.all_b.contains(&3));
        assert!(check_c2(20, &[1, 4, 9, 11, 16, 19]).all_b.contains(&5));
        assert!(!check_c2(10, &[1, 9]).holds);
        assert!(c2prime_holds_with(20, &[1, 4, 9, 11, 16, 19], 5));
        assert!(!check_c2prime(12, &[3, 4, 8, 9]).holds);
        assert!(!check_c2prime(24, &S24).holds);
    }

    #[test]
    fn c3_examples() {
        let r = check_c3(12, &[2, 3, 9, 10]);
        assert!(r.holds);
        assert!(c3_holds_with(12, &[2, 3, 9, 10], 6));
        assert_eq!(c3_data(12, &[2, 3, 9, 10], 6), (vec![2, 10], 2));
        assert!(!check_c3(24, &S24).holds);
        assert!(!check_c3(7, &[1, 6]).holds);
    }

    #[test]
    fn c4_examples() {
        assert_eq!(check_c4(8, &[1, 3, 5, 7]).g, Some(1));
        assert!(!check_c4(24, &S24).holds);
        assert!(!check_c4(9, &[1, 8]).holds);
    }

    #[test]
    fn aggregate() {
        let r = check_all(12, &[3, 4, 8, 9]).unwrap();
        assert!(r.any && !r.any_corrected);
        assert!(!check_all(24, &S24.map(|x| x as i64)).unwrap().any_corrected);
        let r = check_all(15, &[1, 4, 11, 14]).unwrap();
        assert!(!r.any && !r.c2prime.holds);
        assert!(check_all(12, &[1, 2]).is_err());
    }

    #[test]
    fn json_shape() {
        let r = check_all(12, &[3, 4, 8, 9]).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["c2"]["holds"], true);
        assert_eq!(v["c2"]["b"], 3);
        assert_eq!(v["c2"]["vacuous"], false);
        assert_eq!(v["anyCorrected"], false);
    }
}
