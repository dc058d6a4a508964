//! Irredundant bases, base size and the IBIS property.

pub mod matrix;
pub mod matroid;
mod search;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::bsgs::Bsgs;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::orbits::{is_primitive, orbit_partition};
use crate::perm::Perm;

pub use matroid::{matroid_axiom_check, matroid_from_ibis, Axiom, AxiomReport, ClosureOracle, Matroid};
pub use search::{irredundant_spectrum, is_ibis, minimal_base_size, IbisVerdict, SearchCaps, Spectrum};

/// An irredundant sequence together with its strictly decreasing stabilizer orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrSequence {
    pub points: Vec<usize>,
    /// `chain_orders[i]` is the order of the stabilizer of the first `i` points.
    pub chain_orders: Vec<BigUint>,
}

impl IrrSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_base(&self) -> bool {
        self.chain_orders.last().is_some_and(One::is_one)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// The point at `index` is fixed by the stabilizer of its predecessors.
    Redundant {
        index: usize,
    },
    OutOfRange {
        index: usize,
        point: usize,
    },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Redundant { index } => write!(f, "point at position {} is redundant", index + 1),
            Rejection::OutOfRange { index, point } => {
                write!(f, "point {} at position {} is out of range", point + 1, index + 1)
            }
        }
    }
}

/// Checks that every point of `seq` is moved by the stabilizer of its predecessors.
pub fn is_irredundant(b: &Bsgs, seq: &[usize]) -> std::result::Result<IrrSequence, Rejection> {
    let mut h = b.clone();
    let mut chain_orders = vec![h.order().clone()];
    for (index, &point) in seq.iter().enumerate() {
        if point >= b.degree() {
            return Err(Rejection::OutOfRange { index, point });
        }
        if !h.moves(point) {
            return Err(Rejection::Redundant { index });
        }
        h = h.point_stabilizer(point);
        chain_orders.push(h.order().clone());
    }
    Ok(IrrSequence {
        points: seq.to_vec(),
        chain_orders,
    })
}

/// Appends smallest moved points until the stabilizer is trivial.
pub fn extend_to_irredundant_base(b: &Bsgs, prefix: &IrrSequence) -> IrrSequence {
    let mut h = b
        .pointwise_stabilizer(&prefix.points)
        .expect("prefix points are in range");
    let mut out = prefix.clone();
    while let Some(p) = (0..b.degree()).find(|&p| h.moves(p)) {
        h = h.point_stabilizer(p);
        out.points.push(p);
        out.chain_orders.push(h.order().clone());
    }
    out
}

/// True iff `seq` is irredundant and its pointwise stabilizer is nontrivial.
pub fn verify_witness_not_base(b: &Bsgs, seq: &[usize]) -> bool {
    match is_irredundant(b, seq) {
        Ok(s) => !s.is_base(),
        Err(_) => false,
    }
}

/// Generators of the normal closure of `x` in the group generated by `gens`.
fn normal_closure(degree: usize, gens: &[Perm], x: &Perm) -> Bsgs {
    let mut ngens = vec![x.clone()];
    let mut n = Bsgs::build(degree, &ngens, &[], None);
    let mut pos = 0;
    while pos < ngens.len() {
        for g in gens {
            let c = ngens[pos].conjugate(g);
            if !n.contains_unchecked(&c) {
                ngens.push(c);
                n = Bsgs::build(degree, &ngens, &[], None);
            }
        }
        pos += 1;
    }
    n
}

fn is_abelian(gens: &[Perm]) -> bool {
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// Whether the primitive group `g` has an abelian regular normal subgroup.
///
/// Such a subgroup is elementary abelian of prime-power order `n = deg(g)`,
/// so it is the normal closure of any of its fixed-point-free elements of prime order.
fn has_abelian_socle(g: &Bsgs, gens: &[Perm], cap: u64) -> Result<bool> {
    let n = g.degree() as u64;
    let primes = crate::gf::prime_factors(n);
    if primes.len() != 1 {
        return Ok(false);
    }
    let p = primes[0];
    let mut tried: Vec<Bsgs> = Vec::new();
    for x in g.elements(cap)? {
        if x.order() != p || (0..g.degree()).any(|i| x.fixes(i)) {
            continue;
        }
        if tried.iter().any(|t| t.contains_unchecked(&x)) {
            continue;
        }
        let closure = normal_closure(g.degree(), gens, &x);
        if closure.order() == &BigUint::from(n) && is_abelian(closure.strong_generators()) {
            return Ok(true);
        }
        tried.push(closure);
    }
    Ok(false)
}

/// For a primitive `g` with non-abelian socle and a non-regular normal subgroup `m`
/// containing the socle, finds an irredundant base of `m` of size at least 3.
pub fn socle_irredundant_lower_bound(g: &PermGroup, m: &PermGroup, enumeration_cap: u64) -> Result<IrrSequence> {
    let pre = |msg: &str| Err(Error::Precondition(msg.into()));
    if m.degree() != g.degree() {
        return Err(Error::DegreeMismatch(g.degree(), m.degree()));
    }
    if !is_primitive(g)? {
        return pre("group is not primitive");
    }
    let gb = Bsgs::new(g);
    let mb = Bsgs::new(m);
    if m.generators().iter().any(|x| !gb.contains_unchecked(x)) {
        return pre("subgroup is not contained in the group");
    }
    let normal = m
        .generators()
        .iter()
        .all(|x| g.generators().iter().all(|s| mb.contains_unchecked(&x.conjugate(s))));
    if !normal {
        return pre("subgroup is not normal");
    }
    if mb.order() == &BigUint::from(m.degree()) {
        return pre("subgroup acts regularly");
    }
    if has_abelian_socle(&gb, g.generators(), enumeration_cap)? {
        return pre("socle is abelian");
    }
    // Any two points with nontrivial joint stabilizer start an irredundant sequence of length 3.
    let top = orbit_partition(m.degree(), mb.strong_generators(), None);
    for orbit in top.orbits().iter().filter(|o| o.len() > 1) {
        let a = orbit[0];
        let ha = mb.point_stabilizer(a);
        let sub = orbit_partition(m.degree(), ha.strong_generators(), None);
        for o in sub.orbits().iter().filter(|o| o.len() > 1) {
            let hab = ha.point_stabilizer(o[0]);
            if !hab.is_trivial() {
                let seq = is_irredundant(&mb, &[a, o[0]]).expect("irredundant by construction");
                let base = extend_to_irredundant_base(&mb, &seq);
                debug_assert!(base.len() >= 3);
                return Ok(base);
            }
        }
    }
    pre("no irredundant base of size 3 exists, so the hypotheses cannot hold")
}

/// Two irredundant bases of a product-action group on `Γ^k`, built from an
/// irredundant base (γ_0, …, γ_r) of the socle factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductBases {
    pub factor_base: IrrSequence,
    /// Starts with the diagonal tuples (γ_i, …, γ_i), r + 1 of them.
    pub short: IrrSequence,
    /// Starts with (γ_0, …, γ_0) then γ_j in one coordinate at a time, 1 + kr points.
    pub long: IrrSequence,
}

pub fn product_type_bases(g: &Bsgs, socle_factor: &Bsgs, k: usize) -> Result<ProductBases> {
    let m = socle_factor.degree();
    if m.checked_pow(k as u32) != Some(g.degree()) {
        return Err(Error::Input(format!("degree {} is not {m}^{k}", g.degree())));
    }
    let factor_base = extend_to_irredundant_base(socle_factor, &is_irredundant(socle_factor, &[]).expect("empty"));
    let gamma = &factor_base.points;
    if gamma.is_empty() {
        return Err(Error::Precondition("socle factor is trivial".into()));
    }
    let point = |t: Vec<usize>| crate::actions::encode_tuple(&t, m);
    let short: Vec<usize> = gamma.iter().map(|&c| point(vec![c; k])).collect();
    let mut long = vec![point(vec![gamma[0]; k])];
    for i in 0..k {
        for &c in &gamma[1..] {
            let mut t = vec![gamma[0]; k];
            t[i] = c;
            long.push(point(t));
        }
    }
    let extend = |seq: &[usize]| -> Result<IrrSequence> {
        let s = is_irredundant(g, seq).map_err(|r| Error::Precondition(format!("sequence rejected: {r}")))?;
        Ok(extend_to_irredundant_base(g, &s))
    };
    Ok(ProductBases {
        short: extend(&short)?,
        long: extend(&long)?,
        factor_base,
    })
}

/// The image of a point sequence under `g`.
pub fn translate(seq: &[usize], g: &Perm) -> Vec<usize> {
    seq.iter().map(|&p| g.image(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::Limits;
    use crate::catalog::{self, agl, alt_natural, sym_natural};

    fn bsgs(g: &PermGroup) -> Bsgs {
        Bsgs::new(g)
    }

    #[test]
    fn irredundance() {
        let s4 = bsgs(&sym_natural(4).unwrap());
        let seq = is_irredundant(&s4, &[0, 1, 2]).unwrap();
        let orders: Vec<u32> = vec![24, 6, 2, 1];
        assert_eq!(
            seq.chain_orders,
            orders.into_iter().map(BigUint::from).collect::<Vec<_>>()
        );
        assert!(seq.is_base());
        assert_eq!(is_irredundant(&s4, &[0, 0]), Err(Rejection::Redundant { index: 1 }));
        let a4 = bsgs(&alt_natural(4).unwrap());
        assert_eq!(is_irredundant(&a4, &[0, 1, 2]), Err(Rejection::Redundant { index: 2 }));
        assert!(matches!(is_irredundant(&a4, &[7]), Err(Rejection::OutOfRange { .. })));
    }

    #[test]
    fn extension() {
        let s4 = bsgs(&sym_natural(4).unwrap());
        let empty = is_irredundant(&s4, &[]).unwrap();
        assert_eq!(extend_to_irredundant_base(&s4, &empty).points, vec![0, 1, 2]);
        let base = is_irredundant(&s4, &[3, 1, 0]).unwrap();
        assert_eq!(extend_to_irredundant_base(&s4, &base), base);

        let l = Limits::default();
        let g = bsgs(&catalog::resolve("sym:6:sets:2", &l).unwrap());
        let ext = extend_to_irredundant_base(&g, &is_irredundant(&g, &[0]).unwrap());
        assert!(ext.is_base());
        assert!(is_irredundant(&g, &ext.points).is_ok());
    }

    #[test]
    fn not_base_witnesses() {
        let s4 = bsgs(&sym_natural(4).unwrap());
        assert!(!verify_witness_not_base(&s4, &[0, 1, 2]));
        assert!(verify_witness_not_base(&s4, &[]));
        assert!(!verify_witness_not_base(&bsgs(&PermGroup::trivial(3)), &[]));
        assert!(!verify_witness_not_base(&s4, &[0, 0]));
    }

    #[test]
    fn socle_lower_bound() {
        let l = Limits::default();
        let d = catalog::entry("diag:psl2:4:2", &l).unwrap();
        let w = socle_irredundant_lower_bound(&d.group, &d.group, l.enumeration_cap).unwrap();
        assert!(w.len() >= 3 && w.is_base());

        let p = catalog::resolve("prod:sym:5:2", &l).unwrap();
        let a5 = alt_natural(5).unwrap();
        let socle = crate::actions::wreath_product_action(&a5, 2, &PermGroup::trivial(2), &l).unwrap();
        let w = socle_irredundant_lower_bound(&p, &socle, l.enumeration_cap).unwrap();
        assert!(w.len() >= 3);

        let f = agl(1, 5, &l).unwrap();
        assert!(matches!(
            socle_irredundant_lower_bound(&f, &f, l.enumeration_cap),
            Err(Error::Precondition(_))
        ));
        let c4 = PermGroup::new(4, vec![Perm::parse(4, "(1 2 3 4)").unwrap()]).unwrap();
        assert!(matches!(
            socle_irredundant_lower_bound(&c4, &c4, l.enumeration_cap),
            Err(Error::Precondition(_))
        ));
        let a5_sub = PermGroup::new(25, vec![p.generators()[0].clone()]).unwrap();
        assert!(socle_irredundant_lower_bound(&p, &a5_sub, l.enumeration_cap).is_err());
    }

    #[test]
    fn product_bases() {
        let l = Limits::default();
        let g = bsgs(&catalog::resolve("prod:sym:5:2", &l).unwrap());
        let t = bsgs(&alt_natural(5).unwrap());
        let pb = product_type_bases(&g, &t, 2).unwrap();
        let r = pb.factor_base.len() - 1;
        assert_eq!(r, 2);
        assert_eq!(pb.short.points[..r + 1], [0, 6, 12]);
        assert_eq!(pb.long.points[..1 + 2 * r], [0, 5, 10, 1, 2]);
        assert!(pb.short.is_base() && pb.long.is_base());
        assert!(pb.short.len() < pb.long.len());
        assert!(product_type_bases(&g, &t, 3).is_err());
    }
}
