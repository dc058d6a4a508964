//! CT-groups: commutativity is transitive on the nonidentity elements.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::actions::{centralizer_of_element, Limits};
use crate::bsgs::Bsgs;
use crate::catalog::{mobius, psl2};
use crate::error::{input, Error, Result};
use crate::gf::field_of_order;
use crate::perm::{gcd, Perm};

pub const DEFAULT_CT_CAP: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtVerdict {
    pub is_ct: bool,
    /// Nonidentity (a, t, b) with a ~ t, t ~ b and a, b not commuting.
    pub violation: Option<(Perm, Perm, Perm)>,
    pub method_agreement: bool,
}

/// Nonidentity elements with their commuting neighbourhoods.
struct CommutingGraph {
    elements: Vec<Perm>,
    /// `nbr[i]` includes i itself.
    nbr: Vec<FixedBitSet>,
    /// Index of the first element generating the same cyclic subgroup.
    rep: Vec<usize>,
}

impl CommutingGraph {
    fn new(b: &Bsgs, cap: u64) -> Result<CommutingGraph> {
        let elements: Vec<Perm> = b.elements(cap)?.filter(|x| !x.is_identity()).collect();
        let n = elements.len();
        let mut nbr = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            nbr[i].insert(i);
            for j in i + 1..n {
                if elements[i].commutes_with(&elements[j]) {
                    nbr[i].insert(j);
                    nbr[j].insert(i);
                }
            }
        }
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut rep: Vec<usize> = (0..n).collect();
        for i in 0..n {
            if rep[i] != i {
                continue;
            }
            let o = elements[i].order();
            for k in (2..o).filter(|&k| gcd(k, o) == 1) {
                let j = index[&elements[i].pow(k)];
                if j > i {
                    rep[j] = i;
                }
            }
        }
        Ok(CommutingGraph { elements, nbr, rep })
    }

    fn reps(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.elements.len()).filter(|&i| self.rep[i] == i)
    }

    fn triple(&self, a: usize, t: usize, b: usize) -> (Perm, Perm, Perm) {
        (
            self.elements[a].clone(),
            self.elements[t].clone(),
            self.elements[b].clone(),
        )
    }

    /// First (t, a, b) in index order with a, b in N(t) and b not in N(a).
    fn transitivity(&self) -> Option<(Perm, Perm, Perm)> {
        for t in self.reps() {
            for a in self.nbr[t].ones() {
                if let Some(b) = self.nbr[t].difference(&self.nbr[a]).next() {
                    return Some(self.triple(a, t, b));
                }
            }
        }
        None
    }

    /// Pair (x, y) verdict: C(x) = C(y) or C(x) ∩ C(y) = 1.
    fn pair_ok(&self, x: usize, y: usize) -> bool {
        self.nbr[x] == self.nbr[y] || self.nbr[x].is_disjoint(&self.nbr[y])
    }

    /// First failing pair, turned into a commuting chain.
    fn partition(&self) -> Option<(Perm, Perm, Perm)> {
        let reps: Vec<usize> = self.reps().collect();
        for (i, &x) in reps.iter().enumerate() {
            for &y in &reps[i + 1..] {
                if self.pair_ok(x, y) {
                    continue;
                }
                let t = self.nbr[x].intersection(&self.nbr[y]).next().expect("not disjoint");
                let (x, y) = if self.nbr[x].difference(&self.nbr[y]).next().is_some() {
                    (x, y)
                } else {
                    (y, x)
                };
                let z = self.nbr[x].difference(&self.nbr[y]).next().expect("not equal");
                return Some(if self.nbr[z].contains(t) {
                    self.triple(z, t, y)
                } else {
                    self.triple(z, x, t)
                });
            }
        }
        None
    }
}

fn check_order(b: &Bsgs, cap: u64) -> Result<()> {
    match b.order_u64() {
        Some(o) if o <= cap => Ok(()),
        _ => Err(Error::Capacity {
            what: "group order",
            cap,
            needed: b.order().to_string(),
        }),
    }
}

fn verdict(primary: Option<(Perm, Perm, Perm)>, other_ct: bool) -> CtVerdict {
    let is_ct = primary.is_none();
    CtVerdict {
        is_ct,
        violation: primary,
        method_agreement: is_ct == other_ct,
    }
}

/// Exhaustive check that commuting chains a ~ t ~ b close up.
pub fn is_ct_transitivity(b: &Bsgs, cap: u64) -> Result<CtVerdict> {
    check_order(b, cap)?;
    let g = CommutingGraph::new(b, cap)?;
    let v = g.transitivity();
    Ok(verdict(v, g.partition().is_none()))
}

/// Checks that distinct centralizers of nonidentity elements meet trivially.
pub fn is_ct_centralizer_partition(b: &Bsgs, cap: u64) -> Result<CtVerdict> {
    check_order(b, cap)?;
    let g = CommutingGraph::new(b, cap)?;
    let v = g.partition();
    Ok(verdict(v, g.transitivity().is_none()))
}

/// Whether every nonidentity element has an abelian centralizer, computed from
/// centralizer subgroups rather than the commuting graph.
pub fn centralizer_abelian_scan(b: &Bsgs, cap: u64) -> Result<bool> {
    check_order(b, cap)?;
    let limits = Limits {
        enumeration_cap: cap,
        ..Limits::default()
    };
    let mut seen: HashSet<Perm> = HashSet::new();
    for x in b.elements(cap)?.filter(|x| !x.is_identity()) {
        if seen.contains(&x) {
            continue;
        }
        let o = x.order();
        seen.extend((1..o).filter(|&k| gcd(k, o) == 1).map(|k| x.pow(k)));
        let c = centralizer_of_element(b, &x, &limits)?;
        let gens = c.generators();
        if gens
            .iter()
            .enumerate()
            .any(|(i, a)| gens[i + 1..].iter().any(|y| !a.commutes_with(y)))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralPair {
    pub q: u64,
    pub first: Vec<Perm>,
    pub second: Vec<Perm>,
    pub orders: (u64, u64),
    pub intersection_order: usize,
    /// Each subgroup together with any element outside it generates PSL(2,q).
    pub maximal: bool,
}

fn is_maximal(g: &Bsgs, k: &[Perm], cap: u64) -> Result<bool> {
    let kb = Bsgs::build(g.degree(), k, &[], None);
    for x in g.elements(cap)? {
        if kb.contains_unchecked(&x) {
            continue;
        }
        let mut gens = k.to_vec();
        gens.push(x);
        if Bsgs::build(g.degree(), &gens, &[], Some(g.order())).order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two dihedral subgroups of order 2(q-1) of PSL(2,q), q = 2^f ≥ 8, meeting trivially.
///
/// The first is the stabilizer of {0, ∞}; the second is its conjugate by the first
/// group element, in enumeration order, that gives a trivial intersection.
pub fn dihedral_trivial_intersection_witness(q: u64) -> Result<DihedralPair> {
    if !q.is_power_of_two() || q < 8 {
        return input(format!("need q = 2^f with f >= 3, got {q}"));
    }
    let ctx = field_of_order(q)?;
    let (zero, one) = (ctx.zero(), ctx.one());
    let w = ctx.multiplicative_generator();
    let first = vec![
        mobius(&ctx, &[[w, zero.clone()], [zero.clone(), one.clone()]])?,
        mobius(&ctx, &[[zero.clone(), one.clone()], [one, zero]])?,
    ];
    let g = Bsgs::new(&psl2(q)?);
    let cap = g.order_u64().expect("small");
    let k1 = Bsgs::build(g.degree(), &first, &[], None);
    let k1_elems: Vec<Perm> = k1.elements(cap)?.collect();
    for x in g.elements(cap)? {
        let second: Vec<Perm> = first.iter().map(|s| s.conjugate(&x)).collect();
        let k2 = Bsgs::build(g.degree(), &second, &[], None);
        let meet = k1_elems.iter().filter(|y| k2.contains_unchecked(y)).count();
        if meet == 1 {
            let maximal = is_maximal(&g, &first, cap)? && is_maximal(&g, &second, cap)?;
            return Ok(DihedralPair {
                q,
                orders: (k1.order_u64().expect("small"), k2.order_u64().expect("small")),
                first,
                second,
                intersection_order: meet,
                maximal,
            });
        }
    }
    Err(Error::Domain(format!(
        "no trivially intersecting dihedral pair in PSL(2,{q})"
    )))
}

/// The pair verdict of the centralizer-partition test, exposed for symmetry checks.
pub fn centralizer_pair_verdicts(b: &Bsgs, cap: u64) -> Result<Vec<Vec<bool>>> {
    check_order(b, cap)?;
    let g = CommutingGraph::new(b, cap)?;
    let n = g.elements.len();
    Ok((0..n).map(|x| (0..n).map(|y| g.pair_ok(x, y)).collect()).collect())
}
