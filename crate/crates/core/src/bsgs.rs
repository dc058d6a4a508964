//! Stabilizer chains built by deterministic Schreier–Sims.
//!
//! Transversals are kept as Schreier vectors: every orbit point stores the
//! index of the strong generator that first reached it during the BFS, so a
//! coset representative is recovered by walking back to the base point.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Indices into `Bsgs::gens` of the generators of this level's group.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    label: Vec<u32>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Level {
        let mut label = vec![NOT_IN_ORBIT; degree];
        label[point] = ROOT;
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point as u32],
            label,
        }
    }

    #[inline]
    fn contains(&self, x: usize) -> bool {
        self.label[x] != NOT_IN_ORBIT
    }

    /// Extends the orbit after `new_gen` was appended to `self.gens`.
    fn absorb_generator(&mut self, gens: &[Perm], new_gen: usize) {
        let g = &gens[new_gen];
        let old_len = self.orbit.len();
        for pos in 0..old_len {
            let y = g.image(self.orbit[pos] as usize);
            if self.label[y] == NOT_IN_ORBIT {
                self.label[y] = new_gen as u32;
                self.orbit.push(y as u32);
            }
        }
        self.close_from(gens, old_len);
    }

    fn close_from(&mut self, gens: &[Perm], mut pos: usize) {
        while pos < self.orbit.len() {
            let x = self.orbit[pos] as usize;
            for &gi in &self.gens {
                let y = gens[gi].image(x);
                if self.label[y] == NOT_IN_ORBIT {
                    self.label[y] = gi as u32;
                    self.orbit.push(y as u32);
                }
            }
            pos += 1;
        }
    }
}

/// Base and strong generating set with fundamental orbits and transversals.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    gens: Vec<Perm>,
    gen_inv: Vec<Perm>,
    levels: Vec<Level>,
    order: BigUint,
}

/// Builds a stabilizer chain for the group generated by `g`.
pub fn schreier_sims(g: &PermGroup) -> Bsgs {
    Bsgs::build(g.degree(), g.generators(), &[], None)
}

impl Bsgs {
    pub fn new(g: &PermGroup) -> Bsgs {
        schreier_sims(g)
    }

    /// Deterministic Schreier–Sims. Base points start with `prefix`, then the
    /// smallest moved point of the first generator not yet covered. When
    /// `known_order` is given the build stops as soon as the chain reaches it.
    pub fn build(degree: usize, generators: &[Perm], prefix: &[usize], known_order: Option<&BigUint>) -> Bsgs {
        let mut gens: Vec<Perm> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let mut base: Vec<usize> = prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.fixes(b)) {
                base.push(g.smallest_moved_point().expect("non-identity"));
            }
        }
        let gen_inv = gens.iter().map(Perm::inverse).collect();
        let mut b = Bsgs {
            degree,
            gens,
            gen_inv,
            levels: Vec::new(),
            order: BigUint::one(),
        };
        for (i, &pt) in base.iter().enumerate() {
            let mut level = Level::new(pt, degree);
            level.gens = (0..b.gens.len())
                .filter(|&gi| base[..i].iter().all(|&q| b.gens[gi].fixes(q)))
                .collect();
            level.close_from(&b.gens, 0);
            b.levels.push(level);
        }
        if !b.is_complete_for(known_order) {
            b.complete(known_order);
        }
        b.recompute_order();
        b
    }

    fn orbit_product(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn is_complete_for(&self, known_order: Option<&BigUint>) -> bool {
        match known_order {
            Some(target) => &self.orbit_product() == target,
            None => false,
        }
    }

    fn recompute_order(&mut self) {
        self.order = self.orbit_product();
    }

    fn complete(&mut self, known_order: Option<&BigUint>) {
        // checked[level][orbit position] = number of level generators already tested.
        let mut checked: Vec<Vec<u32>> = vec![Vec::new(); self.levels.len()];
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let mut pos = 0;
            while pos < self.levels[li].orbit.len() {
                if checked[li].len() <= pos {
                    checked[li].push(0);
                }
                while (checked[li][pos] as usize) < self.levels[li].gens.len() {
                    let gi = self.levels[li].gens[checked[li][pos] as usize];
                    checked[li][pos] += 1;
                    let beta = self.levels[li].orbit[pos] as usize;
                    let gamma = self.gens[gi].image(beta);
                    if self.levels[li].label[gamma] == gi as u32 {
                        continue;
                    }
                    let h = &self.transversal_element(li, beta) * &self.gens[gi];
                    let (residue, j) = self.sift_from(h, li);
                    if residue.is_identity() {
                        continue;
                    }
                    self.add_strong_generator(residue, li + 1, j);
                    while checked.len() < self.levels.len() {
                        checked.push(Vec::new());
                    }
                    if self.is_complete_for(known_order) {
                        break 'outer;
                    }
                    i = j.min(self.levels.len() - 1) as isize;
                    continue 'outer;
                }
                pos += 1;
            }
            i -= 1;
        }
    }

    /// Adds `h` to levels `from..=to`, appending a base point when `to` is past the end.
    fn add_strong_generator(&mut self, h: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let pt = h.smallest_moved_point().expect("non-identity residue");
            self.levels.push(Level::new(pt, self.degree));
        }
        let idx = self.gens.len();
        self.gen_inv.push(h.inverse());
        self.gens.push(h);
        for l in from..=to {
            self.levels[l].gens.push(idx);
            self.levels[l].absorb_generator(&self.gens, idx);
        }
    }

    /// Strips `g` through the chain starting at `level`; returns the residue and
    /// the first level whose orbit did not contain the base image (or the chain length).
    fn sift_from(&self, mut g: Perm, level: usize) -> (Perm, usize) {
        for (l, lev) in self.levels.iter().enumerate().skip(level) {
            let mut beta = g.image(lev.point);
            if !lev.contains(beta) {
                return (g, l);
            }
            while beta != lev.point {
                let s = lev.label[beta] as usize;
                g = &g * &self.gen_inv[s];
                beta = self.gen_inv[s].image(beta);
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Fundamental orbit of the given level, in discovery order.
    pub fn fundamental_orbit(&self, level: usize) -> Vec<usize> {
        self.levels[level].orbit.iter().map(|&x| x as usize).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Coset representative `u` with `base[level]^u = point`.
    pub fn transversal_element(&self, level: usize, point: usize) -> Perm {
        let lev = &self.levels[level];
        assert!(lev.contains(point), "point not in fundamental orbit");
        let mut labels = Vec::new();
        let mut x = point;
        while x != lev.point {
            let s = lev.label[x] as usize;
            labels.push(s);
            x = self.gen_inv[s].image(x);
        }
        let mut u = Perm::identity(self.degree);
        for &s in labels.iter().rev() {
            u = &u * &self.gens[s];
        }
        u
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.sift_from(p.clone(), 0).0.is_identity())
    }

    pub(crate) fn contains_unchecked(&self, p: &Perm) -> bool {
        self.sift_from(p.clone(), 0).0.is_identity()
    }

    pub fn to_group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.gens.clone()).expect("strong generators share the degree")
    }

    /// Points fixed by every element of the group.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&x| self.gens.iter().all(|g| g.fixes(x)))
            .collect()
    }

    pub fn moves(&self, point: usize) -> bool {
        self.gens.iter().any(|g| !g.fixes(point))
    }

    /// The chain of the stabilizer of the first `k` base points.
    fn tail(&self, k: usize) -> Bsgs {
        let levels = &self.levels[k..];
        let mut used: Vec<usize> = levels.iter().flat_map(|l| l.gens.iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        let mut remap = vec![usize::MAX; self.gens.len()];
        for (new, &old) in used.iter().enumerate() {
            remap[old] = new;
        }
        let new_levels = levels
            .iter()
            .map(|l| Level {
                point: l.point,
                gens: l.gens.iter().map(|&g| remap[g]).collect(),
                orbit: l.orbit.clone(),
                label: l
                    .label
                    .iter()
                    .map(|&s| if s >= ROOT { s } else { remap[s as usize] as u32 })
                    .collect(),
            })
            .collect();
        let mut out = Bsgs {
            degree: self.degree,
            gens: used.iter().map(|&g| self.gens[g].clone()).collect(),
            gen_inv: used.iter().map(|&g| self.gen_inv[g].clone()).collect(),
            levels: new_levels,
            order: BigUint::one(),
        };
        // Trailing levels with trivial orbits carry no information.
        while out.levels.last().is_some_and(|l| l.orbit.len() == 1) {
            out.levels.pop();
        }
        out.recompute_order();
        out
    }

    /// The same chain conjugated by `u`: base points, orbits and generators are all mapped by `u`.
    fn conjugated(&self, u: &Perm) -> Bsgs {
        let uinv = u.inverse();
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let mut label = vec![NOT_IN_ORBIT; self.degree];
                for x in 0..self.degree {
                    label[u.image(x)] = l.label[x];
                }
                Level {
                    point: u.image(l.point),
                    gens: l.gens.clone(),
                    orbit: l.orbit.iter().map(|&x| u.image(x as usize) as u32).collect(),
                    label,
                }
            })
            .collect();
        Bsgs {
            degree: self.degree,
            gens: self.gens.iter().map(|g| &(&uinv * g) * u).collect(),
            gen_inv: self.gen_inv.iter().map(|g| &(&uinv * g) * u).collect(),
            levels,
            order: self.order.clone(),
        }
    }

    /// Chain for the same group whose base starts with `prefix`.
    pub fn with_base_prefix(&self, prefix: &[usize]) -> Bsgs {
        let mut base = prefix.to_vec();
        base.extend(self.base());
        Bsgs::build(self.degree, &self.gens, &base, Some(&self.order))
    }

    /// Stabilizer of a single point, via conjugation when the point lies in the
    /// first fundamental orbit and by base change otherwise.
    pub fn point_stabilizer(&self, point: usize) -> Bsgs {
        if !self.moves(point) {
            return self.clone();
        }
        let first = &self.levels[0];
        if first.point == point {
            return self.tail(1);
        }
        if first.contains(point) {
            let u = self.transversal_element(0, point);
            return self.conjugated(&u).tail(1);
        }
        self.with_base_prefix(&[point]).tail(1)
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<Bsgs> {
        if let Some(&bad) = points.iter().find(|&&p| p >= self.degree) {
            return Err(Error::Input(format!(
                "point {} outside degree {}",
                bad + 1,
                self.degree
            )));
        }
        let mut h = self.clone();
        for &p in points {
            if h.is_trivial() {
                break;
            }
            h = h.point_stabilizer(p);
        }
        Ok(h)
    }

    /// Iterates over all group elements, refusing groups larger than `cap`.
    pub fn elements(&self, cap: u64) -> Result<Elements> {
        match self.order.to_u64() {
            Some(n) if n <= cap => {}
            _ => {
                return Err(Error::Capacity {
                    what: "group order for element enumeration",
                    cap,
                    needed: self.order.to_string(),
                })
            }
        }
        let transversals = (0..self.levels.len())
            .map(|l| {
                self.levels[l]
                    .orbit
                    .iter()
                    .map(|&x| self.transversal_element(l, x as usize))
                    .collect()
            })
            .collect();
        Ok(Elements::new(self.degree, transversals))
    }
}

/// Enumerates `u_m ... u_1` over all transversal choices, the last level varying fastest.
pub struct Elements {
    degree: usize,
    transversals: Vec<Vec<Perm>>,
    index: Vec<usize>,
    partial: Vec<Perm>,
    started: bool,
    done: bool,
}

impl Elements {
    fn new(degree: usize, transversals: Vec<Vec<Perm>>) -> Elements {
        let m = transversals.len();
        let mut partial: Vec<Perm> = Vec::with_capacity(m);
        for l in 0..m {
            let p = match partial.last() {
                None => transversals[0][0].clone(),
                Some(prev) => &transversals[l][0] * prev,
            };
            partial.push(p);
        }
        Elements {
            degree,
            transversals,
            index: vec![0; m],
            partial,
            started: false,
            done: false,
        }
    }
}

impl Iterator for Elements {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let m = self.transversals.len();
        if m == 0 {
            self.done = true;
            return Some(Perm::identity(self.degree));
        }
        if !self.started {
            self.started = true;
            return Some(self.partial[m - 1].clone());
        }
        let mut l = m;
        loop {
            if l == 0 {
                self.done = true;
                return None;
            }
            l -= 1;
            self.index[l] += 1;
            if self.index[l] < self.transversals[l].len() {
                break;
            }
            self.index[l] = 0;
        }
        for k in l..m {
            let u = &self.transversals[k][self.index[k]];
            self.partial[k] = if k == 0 { u.clone() } else { u * &self.partial[k - 1] };
        }
        Some(self.partial[m - 1].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect()).unwrap()
    }

    fn order(b: &Bsgs) -> u64 {
        b.order_u64().unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(order(&schreier_sims(&group(4, &["(1 2)", "(1 2 3 4)"]))), 24);
        assert_eq!(order(&schreier_sims(&group(5, &["(1 2 3)", "(3 4 5)"]))), 60);
        let t = schreier_sims(&group(5, &["()"]));
        assert_eq!(order(&t), 1);
        assert!(t.base().is_empty());
        assert_eq!(order(&schreier_sims(&group(8, &["(1 2 3 4 5 6 7 8)", "(1 2)"]))), 40320);
    }

    #[test]
    fn base_is_deterministic_smallest_moved_point() {
        let g = group(6, &["(3 4 5 6)", "(3 4)"]);
        let a = schreier_sims(&g);
        let b = schreier_sims(&g);
        assert_eq!(a.base(), b.base());
        assert_eq!(a.base()[0], 2);
    }

    #[test]
    fn membership() {
        let a4 = schreier_sims(&group(4, &["(1 2 3)", "(2 3 4)"]));
        assert!(!a4.contains(&Perm::parse(4, "(1 2)").unwrap()).unwrap());
        assert!(a4.contains(&Perm::parse(4, "(1 2 3)").unwrap()).unwrap());
        assert!(a4.contains(&Perm::identity(5)).is_err());
        let s4 = schreier_sims(&group(4, &["(1 2)", "(1 2 3 4)"]));
        for p in s4.elements(100).unwrap() {
            assert!(s4.contains(&p).unwrap());
        }
    }

    #[test]
    fn pointwise_stabilizers() {
        let s4 = schreier_sims(&group(4, &["(1 2)", "(1 2 3 4)"]));
        assert_eq!(order(&s4.pointwise_stabilizer(&[0, 1, 2]).unwrap()), 1);
        assert_eq!(order(&s4.pointwise_stabilizer(&[]).unwrap()), 24);
        assert_eq!(order(&s4.pointwise_stabilizer(&[3]).unwrap()), 6);
        let a4 = schreier_sims(&group(4, &["(1 2 3)", "(2 3 4)"]));
        assert_eq!(order(&a4.pointwise_stabilizer(&[0, 1]).unwrap()), 1);
        assert!(s4.pointwise_stabilizer(&[4]).is_err());
    }

    #[test]
    fn stabilizer_outside_first_orbit() {
        // Intransitive: Sym({0,1,2}) x Sym({3,4,5,6}).
        let g = schreier_sims(&group(7, &["(1 2 3)", "(1 2)", "(4 5 6 7)", "(4 5)"]));
        assert_eq!(order(&g), 144);
        let h = g.point_stabilizer(5);
        assert_eq!(order(&h), 36);
        assert!(h.strong_generators().iter().all(|p| p.fixes(5)));
    }

    #[test]
    fn base_prefix_keeps_order() {
        let g = schreier_sims(&group(6, &["(1 2 3 4 5 6)", "(1 2)"]));
        let h = g.with_base_prefix(&[4, 2]);
        assert_eq!(h.base()[..2], [4, 2]);
        assert_eq!(order(&h), 720);
    }

    #[test]
    fn enumeration_is_exact() {
        let s3 = schreier_sims(&group(3, &["(1 2)", "(1 2 3)"]));
        let els: Vec<Perm> = s3.elements(10).unwrap().collect();
        assert_eq!(els.len(), 6);
        assert!(els[0].is_identity());
        assert_eq!(els.iter().collect::<HashSet<_>>().len(), 6);

        let t = schreier_sims(&PermGroup::trivial(3));
        assert_eq!(t.elements(10).unwrap().collect::<Vec<_>>(), vec![Perm::identity(3)]);

        let a4 = schreier_sims(&group(4, &["(1 2 3)", "(2 3 4)"]));
        let els: HashSet<Perm> = a4.elements(100).unwrap().collect();
        assert_eq!(els.len(), 12);
        assert!(els.iter().all(Perm::is_even));

        assert!(matches!(a4.elements(11), Err(Error::Capacity { .. })));
    }
}
