//! Deterministic Schreier–Sims: base, strong generating set and group order.

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Strong generators fixing every earlier base point.
    generators: Vec<Permutation>,
    /// `transversal[p]` maps the base point to `p`, for `p` in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        Level {
            base_point,
            generators: Vec::new(),
            transversal,
            orbit: vec![base_point],
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            let up = self.transversal[p].clone().expect("orbit point has a transversal");
            for g in &self.generators {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    self.transversal[q] = Some(up.then(g));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// A stabiliser chain `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ … ≥ 1` relative to a base.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Run Schreier–Sims on `generators`, starting the base with `base_prefix`.
    pub fn new(degree: usize, generators: &[Permutation], base_prefix: &[usize]) -> Self {
        let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = Vec::new();
        for &b in base_prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &gens {
            if base.iter().all(|&b| g.fixes(b)) {
                base.push(g.first_moved().expect("non-identity"));
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(degree, b)).collect();
        for (i, level) in levels.iter_mut().enumerate() {
            level.generators = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g.fixes(b)))
                .cloned()
                .collect();
            level.rebuild_orbit();
        }
        let mut chain = StabChain { degree, levels };
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                let p = self.levels[lvl].orbit[oi];
                for gi in 0..self.levels[lvl].generators.len() {
                    let level = &self.levels[lvl];
                    let s = &level.generators[gi];
                    let up = level.transversal[p].as_ref().expect("orbit point");
                    let ups = level.transversal[s.apply(p)].as_ref().expect("orbit closed");
                    let schreier = up.then(s).then(&ups.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, depth) = self.sift(&schreier, lvl + 1);
                    if !residue.is_identity() {
                        if depth == self.levels.len() {
                            let b = residue.first_moved().expect("non-identity");
                            self.levels.push(Level::new(self.degree, b));
                        }
                        for l in lvl + 1..=depth {
                            self.levels[l].generators.push(residue.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        restart = Some(depth);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(d) => i = d as isize,
                None => i -= 1,
            }
        }
    }

    /// Strip `g` through the levels from `from`; returns the residue and the
    /// level where stripping stopped (`levels.len()` when it ran through).
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base_point);
            match &level.transversal[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Basic orbit lengths `|b_i^{G⁽ⁱ⁾}|`.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Generators of the pointwise stabiliser of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        match self.levels.get(k) {
            Some(l) => l.generators.clone(),
            None => Vec::new(),
        }
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.generators.clone())
            .unwrap_or_default()
    }
}
