//! Deterministic stabilizer chains (base and strong generating set).
//!
//! The construction is the classical deterministic Schreier-Sims algorithm:
//! sift every generator, deposit the residue at the level where sifting got
//! stuck, then re-close the affected levels until every Schreier generator
//! sifts to the identity. Base points are the smallest non-fixed points in a
//! fixed point ordering, so two builds of the same group are identical.

use std::collections::HashMap;

use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub(crate) struct StabilizerChain {
    degree: usize,
    /// Point ordering used to pick base points. `order_rank[p]` is the
    /// priority of point `p` (lower = preferred).
    order_rank: Vec<usize>,
    levels: Vec<Level>,
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators deposited at this depth (they fix all earlier bases).
    gens: Vec<Permutation>,
    /// Coset representatives: point -> u with u(base) = point. The base point
    /// itself is represented implicitly by the identity.
    transversal: HashMap<usize, Permutation>,
    /// Orbit of the base in BFS discovery order (starts with the base).
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize) -> Level {
        Level {
            base,
            gens: Vec::new(),
            transversal: HashMap::new(),
            orbit: vec![base],
        }
    }

}

impl StabilizerChain {
    /// Builds the chain for `gens`. When `forced_base` is nonempty a level is
    /// pre-created for each listed point in order, and new base points are
    /// chosen preferring earlier positions in `forced_base` before the
    /// remaining points in ascending order.
    pub fn build(degree: usize, gens: &[Permutation], forced_base: &[usize]) -> StabilizerChain {
        let mut order_rank: Vec<usize> = vec![usize::MAX; degree];
        let mut next = 0usize;
        for &p in forced_base {
            if order_rank[p] == usize::MAX {
                order_rank[p] = next;
                next += 1;
            }
        }
        for rank in order_rank.iter_mut() {
            if *rank == usize::MAX {
                *rank = next;
                next += 1;
            }
        }
        let mut chain = StabilizerChain {
            degree,
            order_rank,
            levels: forced_base.iter().map(|&p| Level::new(p)).collect(),
        };
        for l in (0..chain.levels.len()).rev() {
            chain.close(l);
        }
        for g in gens {
            chain.add_generator(g.clone());
        }
        chain
    }

    /// |G| as the product of the orbit lengths.
    pub fn order(&self) -> u64 {
        self.levels.iter().fold(1u64, |acc, level| {
            acc.checked_mul(level.orbit.len() as u64)
                .expect("group order exceeds u64")
        })
    }

    /// Product of the orbit lengths over levels `from..`, i.e. the order of
    /// the pointwise stabilizer of the first `from` base points.
    pub fn order_from_level(&self, from: usize) -> u64 {
        self.levels[from.min(self.levels.len())..]
            .iter()
            .fold(1u64, |acc, level| {
                acc.checked_mul(level.orbit.len() as u64)
                    .expect("group order exceeds u64")
            })
    }

    /// Strong generators deposited at levels `from..`. Together they generate
    /// the pointwise stabilizer of the first `from` base points.
    pub fn strong_generators_from_level(&self, from: usize) -> Vec<Permutation> {
        self.levels[from.min(self.levels.len())..]
            .iter()
            .flat_map(|level| level.gens.iter().cloned())
            .collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.strip(g.clone(), 0);
        residue.is_identity()
    }

    fn add_generator(&mut self, g: Permutation) {
        let (residue, level) = self.strip(g, 0);
        if residue.is_identity() {
            return;
        }
        self.deposit(residue, level);
        for l in (0..=self.last_touched(level)).rev() {
            self.close(l);
        }
    }

    fn last_touched(&self, level: usize) -> usize {
        level.min(self.levels.len().saturating_sub(1))
    }

    /// Sifts `g` through levels `from..`, returning the residue and the level
    /// at which sifting stopped (`levels.len()` if it ran off the end).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let pt = g.image(level.base);
            if pt == level.base {
                continue;
            }
            match level.transversal.get(&pt) {
                None => return (g, l),
                Some(u) => {
                    g = u.inverse().mul(&g);
                }
            }
        }
        (g, self.levels.len())
    }

    fn deposit(&mut self, residue: Permutation, level: usize) {
        if level == self.levels.len() {
            let base = self.preferred_moved_point(&residue);
            self.levels.push(Level::new(base));
        }
        self.levels[level].gens.push(residue);
    }

    fn preferred_moved_point(&self, g: &Permutation) -> usize {
        (0..self.degree)
            .filter(|&p| g.image(p) != p)
            .min_by_key(|&p| self.order_rank[p])
            .expect("residue is not the identity")
    }

    /// Re-closes level `l`: recomputes the orbit and sifts every Schreier
    /// generator, depositing failures deeper and repeating until stable.
    fn close(&mut self, l: usize) {
        loop {
            self.recompute_orbit(l);
            match self.find_failing_schreier(l) {
                None => return,
                Some((residue, lev)) => {
                    self.deposit(residue, lev);
                    let top = self.last_touched(lev);
                    for l2 in ((l + 1)..=top).rev() {
                        self.close(l2);
                    }
                }
            }
        }
    }

    fn gens_for_level(&self, l: usize) -> Vec<Permutation> {
        self.levels[l..]
            .iter()
            .flat_map(|level| level.gens.iter().cloned())
            .collect()
    }

    fn recompute_orbit(&mut self, l: usize) {
        let gens = self.gens_for_level(l);
        let base = self.levels[l].base;
        let mut transversal: HashMap<usize, Permutation> = HashMap::new();
        let mut orbit = vec![base];
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for s in &gens {
                let q = s.image(pt);
                if q == base || transversal.contains_key(&q) {
                    continue;
                }
                let rep = if pt == base {
                    s.clone()
                } else {
                    s.mul(&transversal[&pt])
                };
                transversal.insert(q, rep);
                orbit.push(q);
            }
        }
        self.levels[l].orbit = orbit;
        self.levels[l].transversal = transversal;
    }

    fn rep(&self, l: usize, point: usize) -> Permutation {
        if point == self.levels[l].base {
            Permutation::identity(self.degree)
        } else {
            self.levels[l].transversal[&point].clone()
        }
    }

    fn find_failing_schreier(&self, l: usize) -> Option<(Permutation, usize)> {
        let gens = self.gens_for_level(l);
        let orbit = self.levels[l].orbit.clone();
        for &pt in &orbit {
            let u = self.rep(l, pt);
            for s in &gens {
                let target = s.image(pt);
                let v = self.rep(l, target);
                let schreier = v.inverse().mul(&s.mul(&u));
                if schreier.is_identity() {
                    continue;
                }
                let (residue, lev) = self.strip(schreier, l + 1);
                if !residue.is_identity() {
                    return Some((residue, lev));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn perms(degree: usize, specs: &[&str]) -> Vec<Permutation> {
        specs.iter().map(|s| parse_cycles(s, degree).unwrap()).collect()
    }

    #[test]
    fn symmetric_group_order() {
        let gens = perms(5, &["(1 2)", "(1 2 3 4 5)"]);
        let chain = StabilizerChain::build(5, &gens, &[]);
        assert_eq!(chain.order(), 120);
    }

    #[test]
    fn membership() {
        let gens = perms(4, &["(1 2 3)", "(2 3 4)"]); // A_4
        let chain = StabilizerChain::build(4, &gens, &[]);
        assert_eq!(chain.order(), 12);
        assert!(chain.contains(&parse_cycles("(1 2)(3 4)", 4).unwrap()));
        assert!(!chain.contains(&parse_cycles("(1 2)", 4).unwrap()));
    }

    #[test]
    fn forced_base_prefix_isolates_stabilizer() {
        // C_2 x C_2 acting on 4 points; forcing base [2, 3] first means the
        // tail of the chain is the pointwise stabilizer of {2, 3}.
        let gens = perms(4, &["(1 2)", "(3 4)"]);
        let chain = StabilizerChain::build(4, &gens, &[2, 3]);
        assert_eq!(chain.order(), 4);
        let tail = chain.strong_generators_from_level(2);
        assert_eq!(chain.order_from_level(2), 2);
        for g in &tail {
            assert_eq!(g.image(2), 2);
            assert_eq!(g.image(3), 3);
        }
    }
}
