#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use ibis_core::{Perm, PermGroup};

/// All group elements by breadth-first closure under the generators.
pub fn closure(g: &PermGroup) -> Vec<Perm> {
    let id = Perm::identity(g.degree());
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for s in g.generators() {
            let y = x.compose(s).unwrap();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

/// Lengths of all irredundant bases, trying every point at every step.
pub fn naive_spectrum(g: &PermGroup) -> BTreeSet<usize> {
    fn walk(n: usize, stab: &[Perm], depth: usize, out: &mut BTreeSet<usize>) {
        if stab.len() == 1 {
            out.insert(depth);
            return;
        }
        for p in 0..n {
            if stab.iter().any(|x| !x.fixes(p)) {
                let next: Vec<Perm> = stab.iter().filter(|x| x.fixes(p)).cloned().collect();
                walk(n, &next, depth + 1, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(g.degree(), &closure(g), 0, &mut out);
    out
}
