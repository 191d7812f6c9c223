//! Deterministic Schreier–Sims.
//!
//! Base points are appended as the smallest point moved by the element that
//! forces a new level; generators are processed in the order given, so the
//! chain (and everything derived from it) is reproducible.

use std::collections::HashSet;

use num_bigint::BigUint;

use super::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the level's base point to `b`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    tested: HashSet<(usize, usize)>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[point] = Some((id.clone(), id));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
            tested: HashSet::new(),
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.gens.push(g);
        let mut idx = 0;
        while idx < self.orbit.len() {
            let x = self.orbit[idx];
            for s in &self.gens {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().0.then(s);
                    let inv = u.inverse();
                    self.transversal[y] = Some((u, inv));
                    self.orbit.push(y);
                }
            }
            idx += 1;
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn from_generators<'a>(degree: usize, gens: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.insert(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sifts `g` from level `from`; returns the residue and the level where it stopped.
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(level.point);
            match &level.transversal[beta] {
                None => return (g, i),
                Some((_, inv)) => g = g.then(inv),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, level) = self.sift(g.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }

    /// Adds `g` as a group generator. Returns false when it was already a member.
    pub fn insert(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        if self.contains(g) {
            return false;
        }
        // g belongs to every level whose earlier base points it fixes.
        let mut depth = 0;
        while depth < self.levels.len() && g.fixes(self.levels[depth].point) {
            depth += 1;
        }
        if depth == self.levels.len() {
            let point = g.smallest_moved_point().expect("non-member is not the identity");
            self.levels.push(Level::new(point, self.degree));
        }
        for level in &mut self.levels[..=depth] {
            level.add_generator(g.clone());
        }
        self.complete();
        true
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match self.next_failing_schreier(lvl) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let point = h.smallest_moved_point().expect("residue is not the identity");
                        self.levels.push(Level::new(point, self.degree));
                    }
                    for level in &mut self.levels[lvl + 1..=j] {
                        level.add_generator(h.clone());
                    }
                    i = j as isize;
                }
            }
        }
    }

    fn next_failing_schreier(&mut self, lvl: usize) -> Option<(Permutation, usize)> {
        let mut idx = 0;
        while idx < self.levels[lvl].orbit.len() {
            let beta = self.levels[lvl].orbit[idx];
            for s_idx in 0..self.levels[lvl].gens.len() {
                if !self.levels[lvl].tested.insert((beta, s_idx)) {
                    continue;
                }
                let level = &self.levels[lvl];
                let s = &level.gens[s_idx];
                let image = s.apply(beta);
                let u_beta = &level.transversal[beta].as_ref().unwrap().0;
                let u_image_inv = &level.transversal[image].as_ref().unwrap().1;
                let schreier = u_beta.then(s).then(u_image_inv);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, j) = self.sift(schreier, lvl + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
            idx += 1;
        }
        None
    }

    /// Every element, in a fixed order. Callers bound the order first.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            chain: self,
            digits: vec![0; self.levels.len()],
            done: false,
        }
    }

    /// Strong generators, top level first, without duplicates.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// The basic orbit of the top level, when the chain is nonempty.
    pub fn top_orbit(&self) -> Option<&[usize]> {
        self.levels.first().map(|l| l.orbit.as_slice())
    }
}

pub struct ElementIter<'a> {
    chain: &'a StabChain,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.chain.levels;
        let mut g = Permutation::identity(self.chain.degree);
        for (level, &d) in levels.iter().zip(&self.digits).rev() {
            let beta = level.orbit[d];
            g = g.then(&level.transversal[beta].as_ref().unwrap().0);
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == levels.len() {
                self.done = true;
                break;
            }
            self.digits[k] += 1;
            if self.digits[k] < levels[k].orbit.len() {
                break;
            }
            self.digits[k] = 0;
            k += 1;
        }
        Some(g)
    }
}
