//! The matroid of an IBIS group: closure(A) is the fixed-point set of the
//! pointwise stabilizer of A.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::bsgs::Bsgs;
use crate::error::{Error, Result};

use super::search::IbisVerdict;

/// Anything with a closure operator on subsets of `0..ground_size()`.
pub trait ClosureOracle {
    fn ground_size(&self) -> usize;
    /// Sorted closure of `set` (which need not be sorted).
    fn closure(&self, set: &[usize]) -> Vec<usize>;
}

pub const FLAT_ENUMERATION_CAP: usize = 200;

#[derive(Clone, Debug)]
pub struct Matroid {
    bsgs: Bsgs,
    rank: usize,
}

impl Matroid {
    pub fn ground_size(&self) -> usize {
        self.bsgs.degree()
    }

    /// Rank of the ground set, equal to b(G).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length of a maximal irredundant subsequence of `set`.
    pub fn rank_of(&self, set: &[usize]) -> usize {
        let mut h = self.bsgs.clone();
        let mut r = 0;
        for &p in set {
            if h.moves(p) {
                h = h.point_stabilizer(p);
                r += 1;
            }
        }
        r
    }

    /// Flats grouped by rank, or `None` when the ground set exceeds the enumeration cap.
    pub fn flats_by_rank(&self) -> Option<Vec<Vec<Vec<usize>>>> {
        (self.ground_size() <= FLAT_ENUMERATION_CAP).then(|| enumerate_flats(self))
    }
}

impl ClosureOracle for Matroid {
    fn ground_size(&self) -> usize {
        self.bsgs.degree()
    }

    fn closure(&self, set: &[usize]) -> Vec<usize> {
        self.bsgs
            .pointwise_stabilizer(set)
            .expect("points in range")
            .fixed_points()
    }
}

pub fn matroid_from_ibis(b: &Bsgs, verdict: &IbisVerdict) -> Result<Matroid> {
    if verdict.is_ibis != Some(true) {
        return Err(Error::Precondition("matroid extraction needs an IBIS group".into()));
    }
    let rank = verdict.base_size.expect("IBIS verdicts carry b(G)");
    Ok(Matroid { bsgs: b.clone(), rank })
}

/// Flats reachable from closure(∅) by adding one point at a time, grouped by rank.
fn enumerate_flats<M: ClosureOracle + ?Sized>(m: &M) -> Vec<Vec<Vec<usize>>> {
    let n = m.ground_size();
    let mut levels = vec![vec![m.closure(&[])]];
    let mut seen: HashSet<Vec<usize>> = levels[0].iter().cloned().collect();
    loop {
        let mut next = Vec::new();
        for f in levels.last().expect("nonempty") {
            for x in (0..n).filter(|x| f.binary_search(x).is_err()) {
                let mut a = f.clone();
                a.push(x);
                let c = m.closure(&a);
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            return levels;
        }
        next.sort();
        levels.push(next);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Extensive,
    Monotone,
    Idempotent,
    Exchange,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Extensive => "extensive",
            Axiom::Monotone => "monotone",
            Axiom::Idempotent => "idempotent",
            Axiom::Exchange => "exchange",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub flats_checked: usize,
    /// The first violated axiom and the sets exhibiting it.
    pub violation: Option<(Axiom, Vec<Vec<usize>>)>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

struct Cached<'a, M: ?Sized> {
    inner: &'a M,
    cache: RefCell<HashMap<Vec<usize>, Vec<usize>>>,
}

impl<M: ClosureOracle + ?Sized> ClosureOracle for Cached<'_, M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn closure(&self, set: &[usize]) -> Vec<usize> {
        let mut key = set.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(c) = self.cache.borrow().get(&key) {
            return c.clone();
        }
        let c = self.inner.closure(&key);
        self.cache.borrow_mut().insert(key, c.clone());
        c
    }
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn with(f: &[usize], extra: &[usize]) -> Vec<usize> {
    let mut a = f.to_vec();
    a.extend_from_slice(extra);
    a.sort_unstable();
    a.dedup();
    a
}

/// Checks the closure axioms on every flat and on its one- and two-point extensions.
pub fn matroid_axiom_check<M: ClosureOracle + ?Sized>(m: &M) -> AxiomReport {
    let cached = Cached {
        inner: m,
        cache: RefCell::new(HashMap::new()),
    };
    let m = &cached;
    let n = m.ground_size();
    let flats: Vec<Vec<usize>> = enumerate_flats(m).into_iter().flatten().collect();
    let fail = |axiom, sets: Vec<Vec<usize>>| AxiomReport {
        flats_checked: flats.len(),
        violation: Some((axiom, sets)),
    };
    let empty_closure = m.closure(&[]);
    for f in &flats {
        if !subset(&empty_closure, f) {
            return fail(Axiom::Monotone, vec![Vec::new(), f.clone()]);
        }
        let cf = m.closure(f);
        if &cf != f {
            return fail(Axiom::Idempotent, vec![f.clone(), cf]);
        }
        let outside: Vec<usize> = (0..n).filter(|x| f.binary_search(x).is_err()).collect();
        for &x in &outside {
            let a = with(f, &[x]);
            let ca = m.closure(&a);
            if !subset(&a, &ca) {
                return fail(Axiom::Extensive, vec![a, ca]);
            }
            if !subset(f, &ca) {
                return fail(Axiom::Monotone, vec![f.clone(), a]);
            }
            let cca = m.closure(&ca);
            if cca != ca {
                return fail(Axiom::Idempotent, vec![a, ca]);
            }
            // y in cl(F + x) \ F forces x in cl(F + y).
            for &y in ca.iter().filter(|y| f.binary_search(y).is_err() && **y != x) {
                let cy = m.closure(&with(f, &[y]));
                if cy.binary_search(&x).is_err() {
                    return fail(Axiom::Exchange, vec![f.clone(), vec![x], vec![y]]);
                }
            }
            for &y in outside.iter().filter(|&&y| y > x) {
                let b = with(f, &[x, y]);
                let cb = m.closure(&b);
                if !subset(&b, &cb) {
                    return fail(Axiom::Extensive, vec![b, cb]);
                }
                if !subset(&ca, &cb) {
                    return fail(Axiom::Monotone, vec![a, b]);
                }
            }
        }
    }
    AxiomReport {
        flats_checked: flats.len(),
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::Limits;
    use crate::analysis::{is_ibis, SearchCaps};
    use crate::catalog::{agl, sym_natural};
    use crate::group::PermGroup;

    fn matroid(g: &PermGroup) -> Matroid {
        let b = Bsgs::new(g);
        let v = is_ibis(&b, &SearchCaps::default()).unwrap();
        matroid_from_ibis(&b, &v).unwrap()
    }

    #[test]
    fn uniform_matroid_of_sym4() {
        let m = matroid(&sym_natural(4).unwrap());
        assert_eq!(m.rank(), 3);
        assert_eq!(m.closure(&[]), Vec::<usize>::new());
        assert_eq!(m.closure(&[0, 1, 2]), vec![0, 1, 2, 3]);
        assert_eq!(m.closure(&[2, 0]), vec![0, 2]);
        let flats = m.flats_by_rank().unwrap();
        let counts: Vec<usize> = flats.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 4, 6, 1]);
        assert!(matroid_axiom_check(&m).ok());
    }

    #[test]
    fn affine_matroids() {
        let l = Limits::default();
        let m = matroid(&agl(1, 5, &l).unwrap());
        assert_eq!(m.rank(), 2);
        for x in 0..5 {
            assert_eq!(m.closure(&[x]), vec![x]);
        }
        let m = matroid(&agl(2, 3, &l).unwrap());
        assert_eq!(m.rank(), 3);
        assert_eq!(m.rank_of(&(0..9).collect::<Vec<_>>()), 3);
        // Lines of AG(2,3) are the rank-2 flats.
        assert_eq!(m.flats_by_rank().unwrap()[2].len(), 12);
        assert!(matroid_axiom_check(&m).ok());
    }

    #[test]
    fn non_ibis_is_rejected() {
        let b = Bsgs::new(&sym_natural(3).unwrap());
        let v = IbisVerdict {
            is_ibis: Some(false),
            base_size: Some(2),
            counterexample: None,
            sizes_seen: vec![2, 3],
            node_count: 0,
        };
        assert!(matches!(matroid_from_ibis(&b, &v), Err(Error::Precondition(_))));
    }

    /// Closure that glues points 0 and 1 but not 1 and 0.
    struct Lopsided;

    impl ClosureOracle for Lopsided {
        fn ground_size(&self) -> usize {
            3
        }

        fn closure(&self, set: &[usize]) -> Vec<usize> {
            let mut out: Vec<usize> = set.to_vec();
            out.sort_unstable();
            out.dedup();
            match out.as_slice() {
                [0] => vec![0, 1],
                [] | [1] | [2] | [0, 1] => out,
                _ => vec![0, 1, 2],
            }
        }
    }

    #[test]
    fn corrupted_closure_fails_exchange() {
        let r = matroid_axiom_check(&Lopsided);
        let (axiom, sets) = r.violation.unwrap();
        assert_eq!(axiom, Axiom::Exchange);
        assert_eq!(sets, vec![vec![], vec![0], vec![1]]);
    }
}
