//! Finite abelian groups given by invariant factors, their automorphisms and
//! a few number-theoretic helpers.
//!
//! Elements are tuples of residues `(e₁,…,e_k)` with `0 ≤ eᵢ < dᵢ`. They are
//! enumerated lexicographically (first coordinate most significant), and that
//! enumeration index is the vertex index used by [`crate::graph::cayley_graph`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Reduce a possibly negative integer to its canonical residue in `0..n`.
pub fn reduce(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Sorted multipliers `g` in `1..n` coprime to `n`; these induce exactly the
/// automorphisms `x ↦ gx` of `Z_n`. For `n = 1` the trivial group has the single
/// automorphism `x ↦ 0·x`, reported as `[0]`.
pub fn units_mod(n: u64) -> Vec<u64> {
    if n <= 1 {
        return vec![0];
    }
    (1..n).filter(|&g| gcd(g, n) == 1).collect()
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// The unique `t` in `0..m₁m₂` with `t ≡ r₁ (mod m₁)` and `t ≡ r₂ (mod m₂)`.
pub fn crt_solve(r1: i64, m1: u64, r2: i64, m2: u64) -> Result<u64> {
    if m1 == 0 || m2 == 0 || gcd(m1, m2) != 1 {
        return Err(Error::NotCoprime(m1, m2));
    }
    let (a1, a2) = (reduce(r1, m1) as i128, reduce(r2, m2) as i128);
    let (m1, m2) = (m1 as i128, m2 as i128);
    // inv is m1⁻¹ mod m2
    let (_, inv, _) = ext_gcd(m1.rem_euclid(m2), m2);
    let k = ((a2 - a1) * inv).rem_euclid(m2);
    Ok((a1 + m1 * k).rem_euclid(m1 * m2) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [x] => write!(f, "{x}"),
            cs => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: usize,
}

impl AbelianGroup {
    /// `Z_n`; the trivial group when `n = 1`.
    pub fn cyclic(n: i64) -> Result<Self> {
        if n <= 0 {
            return Err(Error::InvalidOrder(n));
        }
        if n == 1 {
            return Ok(AbelianGroup {
                factors: Vec::new(),
                order: 1,
            });
        }
        Ok(AbelianGroup {
            factors: vec![n as u64],
            order: n as usize,
        })
    }

    /// `Z_{d₁} × … × Z_{d_k}`; factors need not be in invariant-factor form.
    pub fn product(factors: &[i64]) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidFactor(bad));
        }
        let factors: Vec<u64> = factors.iter().map(|&d| d as u64).collect();
        let order = factors.iter().product::<u64>() as usize;
        Ok(AbelianGroup { factors, order })
    }

    /// Parse `"12"` or `"4x4"` style descriptors.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(['x', 'X', '*']).map(str::trim).collect();
        let factors = parts
            .iter()
            .map(|p| {
                p.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad group factor '{p}' in '{text}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if factors.len() == 1 {
            AbelianGroup::cyclic(factors[0])
        } else {
            AbelianGroup::product(&factors)
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `Some(n)` when the group is presented with at most one factor.
    pub fn cyclic_order(&self) -> Option<u64> {
        match self.factors.as_slice() {
            [] => Some(1),
            [n] => Some(*n),
            _ => None,
        }
    }

    /// Descriptor in the CLI syntax (`"12"`, `"4x4"`, `"1"` for the trivial group).
    pub fn descriptor(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::Parse(format!(
                "element has {} coordinates, group {} needs {}",
                coords.len(),
                self.descriptor(),
                self.rank()
            )));
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| reduce(c, d))
                .collect(),
        ))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: u64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, d)| ((*x as u128 * k as u128) % *d as u128) as u64)
                .collect(),
        )
    }

    /// Lexicographic enumeration index of an element.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (x, d)| acc * *d as usize + *x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (c, d) in coords.iter_mut().zip(&self.factors).rev() {
            *c = (idx % *d as usize) as u64;
            idx /= *d as usize;
        }
        GroupElement(coords)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_at(i))
    }

    pub fn is_zero(&self, a: &GroupElement) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// Full addition table by element index; `table[a * |G| + b] = a + b`.
    pub fn addition_table(&self) -> Vec<usize> {
        let elems: Vec<GroupElement> = self.elements().collect();
        let mut table = Vec::with_capacity(self.order * self.order);
        for a in &elems {
            for b in &elems {
                table.push(self.index_of(&self.add(a, b)));
            }
        }
        table
    }

    /// Parse the connection-set syntax: `"1,-1,11"` for cyclic groups,
    /// `"(2,2),(0,2)"` for products. Residues are reduced on ingestion.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<GroupElement>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if self.rank() <= 1 && !text.contains('(') {
            return text
                .split(',')
                .map(|t| {
                    let v = t
                        .trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer '{}'", t.trim())))?;
                    if self.rank() == 0 {
                        Ok(self.zero())
                    } else {
                        self.element(&[v])
                    }
                })
                .collect();
        }
        let mut out = Vec::new();
        let mut rest = text;
        loop {
            rest = rest.trim_start_matches([',', ' ']);
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' at '{rest}'")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed tuple in '{text}'")))?;
            let coords = rest[1..close]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer '{}'", t.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(self.element(&coords)?);
            rest = &rest[close + 1..];
        }
        Ok(out)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// `Z_n`; see [`AbelianGroup::cyclic`].
pub fn make_cyclic(n: i64) -> Result<AbelianGroup> {
    AbelianGroup::cyclic(n)
}

/// `Z_{d₁} × … × Z_{d_k}`; see [`AbelianGroup::product`].
pub fn make_product(factors: &[i64]) -> Result<AbelianGroup> {
    AbelianGroup::product(factors)
}

/// An automorphism of an abelian group, stored both by the images of the
/// canonical generators `eᵢ` and as a permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAutomorphism {
    generator_images: Vec<GroupElement>,
    permutation: Vec<usize>,
}

impl GroupAutomorphism {
    pub fn generator_images(&self) -> &[GroupElement] {
        &self.generator_images
    }

    /// `permutation[i]` is the index of the image of element `i`.
    pub fn as_permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn apply_index(&self, idx: usize) -> usize {
        self.permutation[idx]
    }

    /// The multiplier `g` when the group is cyclic (`x ↦ gx`).
    pub fn multiplier(&self) -> Option<u64> {
        match self.generator_images.as_slice() {
            [] => Some(0),
            [img] => img.0.first().copied(),
            _ => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }
}

fn build_automorphism(group: &AbelianGroup, images: &[GroupElement]) -> GroupAutomorphism {
    let permutation = group
        .elements()
        .map(|e| {
            let img = e
                .0
                .iter()
                .zip(images)
                .fold(group.zero(), |acc, (&c, im)| group.add(&acc, &group.scale(c, im)));
            group.index_of(&img)
        })
        .collect();
    GroupAutomorphism {
        generator_images: images.to_vec(),
        permutation,
    }
}

/// All automorphisms of `group`, by backtracking over generator images.
///
/// An image `x` for generator `eⱼ` is admissible when `dⱼ·x = 0` and no proper
/// multiple `k·x` lies in the span of the earlier images, which makes the
/// resulting homomorphism injective.
pub fn automorphisms(group: &AbelianGroup) -> Result<Vec<GroupAutomorphism>> {
    limits::check("abelian group", group.order(), limits::group_enumeration_cap())?;
    let cap = limits::automorphism_count_cap();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(group.rank());
    let mut span = vec![false; group.order()];
    span[0] = true;
    extend_images(group, &mut images, &mut span, &mut out, cap)?;
    Ok(out)
}

fn extend_images(
    group: &AbelianGroup,
    images: &mut Vec<GroupElement>,
    span: &mut Vec<bool>,
    out: &mut Vec<GroupAutomorphism>,
    cap: usize,
) -> Result<()> {
    let j = images.len();
    if j == group.rank() {
        if out.len() >= cap {
            return Err(Error::SizeLimit {
                what: "automorphism list",
                actual: out.len() + 1,
                limit: cap,
            });
        }
        out.push(build_automorphism(group, images));
        return Ok(());
    }
    let d = group.factors[j];
    for x in group.elements() {
        if !group.is_zero(&group.scale(d, &x)) {
            continue;
        }
        let multiples: Vec<usize> = (0..d).map(|k| group.index_of(&group.scale(k, &x))).collect();
        if multiples[1..].iter().any(|&m| span[m]) {
            continue;
        }
        let old: Vec<usize> = (0..span.len()).filter(|&i| span[i]).collect();
        let mut added = Vec::new();
        for &s in &old {
            let se = group.element_at(s);
            for k in 1..d {
                let idx = group.index_of(&group.add(&se, &group.scale(k, &x)));
                if !span[idx] {
                    span[idx] = true;
                    added.push(idx);
                }
            }
        }
        images.push(x);
        let res = extend_images(group, images, span, out, cap);
        images.pop();
        for idx in added {
            span[idx] = false;
        }
        res?;
    }
    Ok(())
}

/// `Aut(G,S)`: the automorphisms fixing `set` setwise.
pub fn set_stabilizer(group: &AbelianGroup, set: &[GroupElement]) -> Result<Vec<GroupAutomorphism>> {
    let mut member = vec![false; group.order()];
    for s in set {
        member[group.index_of(s)] = true;
    }
    Ok(automorphisms(group)?
        .into_iter()
        .filter(|a| set.iter().all(|s| member[a.apply_index(group.index_of(s))]))
        .collect())
}

/// Multipliers `g` (units mod `n`) with `gS = S`; the cyclic fast path of
/// [`set_stabilizer`] that needs no enumeration cap.
pub fn cyclic_set_stabilizer(n: u64, set: &[u64]) -> Vec<u64> {
    let mut member = vec![false; n as usize];
    for &s in set {
        member[(s % n) as usize] = true;
    }
    units_mod(n)
        .into_iter()
        .filter(|&g| set.iter().all(|&s| member[((g as u128 * s as u128) % n as u128) as usize]))
        .collect()
}

/// Subgroups `⟨d⟩` of `Z_n`, one per divisor `d`, sorted by size.
pub fn subgroups_cyclic(n: u64) -> Vec<Vec<u64>> {
    let mut subs: Vec<Vec<u64>> = divisors(n)
        .into_iter()
        .rev()
        .map(|d| (0..n / d).map(|k| k * d).collect())
        .collect();
    subs.sort_by_key(Vec::len);
    subs
}

/// All abelian groups of the given order, one per multiset of invariant
/// factors `d₁ | d₂ | … | d_k`, listed with factors ascending.
pub fn abelian_groups_of_order(order: u64) -> Vec<AbelianGroup> {
    if order == 1 {
        return vec![AbelianGroup::cyclic(1).expect("order 1")];
    }
    let mut primes = Vec::new();
    let mut m = order;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    // For each prime, partitions of its exponent (parts descending).
    let per_prime: Vec<Vec<Vec<u32>>> = primes.iter().map(|&(_, e)| partitions(e)).collect();
    let mut groups = Vec::new();
    let mut choice = vec![0usize; primes.len()];
    loop {
        let k = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| per_prime[i][c].len())
            .max()
            .unwrap_or(0);
        // Largest invariant factor collects the largest prime powers.
        let mut factors = vec![1u64; k];
        for (i, &c) in choice.iter().enumerate() {
            let (p, _) = primes[i];
            for (slot, &part) in per_prime[i][c].iter().enumerate() {
                factors[k - 1 - slot] *= p.pow(part);
            }
        }
        let factors: Vec<i64> = factors.into_iter().map(|d| d as i64).collect();
        groups.push(if factors.len() == 1 {
            AbelianGroup::cyclic(factors[0]).expect("valid order")
        } else {
            AbelianGroup::product(&factors).expect("valid factors")
        });
        let mut i = 0;
        loop {
            if i == choice.len() {
                groups.sort_by(|a, b| (a.rank(), &a.factors).cmp(&(b.rank(), &b.factors)));
                return groups;
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
