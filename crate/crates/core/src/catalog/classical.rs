use std::collections::HashMap;

use num_bigint::BigUint;

use crate::actions::{coset_action, decode_tuple, encode_tuple, symmetric_generators, Limits};
use crate::bsgs::Bsgs;
use crate::error::{input, Error, Result};
use crate::gf::{field, field_of_order, FieldCtx, FieldElem};
use crate::group::PermGroup;
use crate::perm::Perm;

pub fn sym_natural(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return input("Sym(n) needs n >= 1");
    }
    PermGroup::new(n, symmetric_generators(n))
}

/// Alt(n) generated by (0 1 2) and an even long cycle.
pub fn alt_natural(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return input("Alt(n) needs n >= 3");
    }
    let three = Perm::from_cycles(n, &[&[0, 1, 2]])?;
    let cycle: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    let long = Perm::from_cycles(n, &[&cycle])?;
    PermGroup::new(n, vec![three, long])
}

fn binomial(n: usize, m: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..m {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// All m-subsets of {0..n-1} in lexicographic order.
pub fn m_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    if m > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..m).rev().find(|&i| cur[i] < n - m + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The induced action on m-subsets, points labelled lexicographically.
pub fn action_on_m_subsets(g: &PermGroup, m: usize, limits: &Limits) -> Result<PermGroup> {
    let n = g.degree();
    if m == 0 || m >= n {
        return input(format!("m-subset action needs 1 <= m <= {}", n.saturating_sub(1)));
    }
    limits.check_degree(binomial(n, m))?;
    let subsets = m_subsets(n, m);
    let index: HashMap<&[usize], usize> = subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let gens = g
        .generators()
        .iter()
        .map(|p| {
            let images = subsets
                .iter()
                .map(|s| {
                    let mut t: Vec<usize> = s.iter().map(|&x| p.image(x)).collect();
                    t.sort_unstable();
                    index[t.as_slice()] as u32
                })
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    PermGroup::new(subsets.len(), gens)
}

/// Sym(6) on the 10 partitions of {0..5} into two 3-sets, each labelled by its part containing 0.
pub fn sym6_on_triple_partitions() -> PermGroup {
    let parts: Vec<Vec<usize>> = m_subsets(6, 3).into_iter().filter(|s| s[0] == 0).collect();
    let index: HashMap<Vec<usize>, usize> = parts.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let gens = symmetric_generators(6)
        .iter()
        .map(|p| {
            let images = parts
                .iter()
                .map(|s| {
                    let img: Vec<usize> = s.iter().map(|&x| p.image(x)).collect();
                    let mut part: Vec<usize> = if img.contains(&0) {
                        img
                    } else {
                        (0..6).filter(|x| !img.contains(x)).collect()
                    };
                    part.sort_unstable();
                    index[&part] as u32
                })
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    PermGroup::new(10, gens).expect("valid")
}

type Matrix = Vec<Vec<u32>>;

fn mat_vec(v: &[usize], m: &Matrix, p: u32) -> Vec<usize> {
    let d = v.len();
    (0..d)
        .map(|j| {
            let s: u64 = (0..d).map(|i| v[i] as u64 * m[i][j] as u64).sum();
            (s % p as u64) as usize
        })
        .collect()
}

fn linear_perm(m: &Matrix, p: u32, d: usize) -> Perm {
    let n = (p as usize).pow(d as u32);
    let images = (0..n)
        .map(|x| encode_tuple(&mat_vec(&decode_tuple(x, p as usize, d), m, p), p as usize) as u32)
        .collect();
    Perm::from_images_unchecked(images)
}

/// AGL(d,p) on GF(p)^d, vectors encoded with coordinate 0 most significant.
pub fn agl(d: usize, p: u32, limits: &Limits) -> Result<PermGroup> {
    if d == 0 {
        return input("AGL(d,p) needs d >= 1");
    }
    let ctx = field(p, 1)?;
    let n = limits.check_degree((p as u128).pow(d as u32))?;
    let ps = p as usize;
    let mut gens = Vec::new();
    for i in 0..d {
        let images = (0..n)
            .map(|x| {
                let mut v = decode_tuple(x, ps, d);
                v[i] = (v[i] + 1) % ps;
                encode_tuple(&v, ps) as u32
            })
            .collect();
        gens.push(Perm::from_images_unchecked(images));
    }
    let identity = |d: usize| -> Matrix { (0..d).map(|i| (0..d).map(|j| u32::from(i == j)).collect()).collect() };
    if d >= 2 {
        let mut t = identity(d);
        t[0][1] = 1;
        gens.push(linear_perm(&t, p, d));
        let c: Matrix = (0..d)
            .map(|i| (0..d).map(|j| u32::from(j == (i + 1) % d)).collect())
            .collect();
        gens.push(linear_perm(&c, p, d));
    }
    let mut s = identity(d);
    s[0][0] = ctx.multiplicative_generator().coeffs()[0];
    gens.push(linear_perm(&s, p, d));
    PermGroup::new(n, gens)
}

pub fn frobenius_agl1(p: u32, limits: &Limits) -> Result<PermGroup> {
    agl(1, p, limits)
}

/// |GL(d,p)|.
pub fn gl_order(d: u32, p: u64) -> BigUint {
    let q = BigUint::from(p).pow(d);
    (0..d).fold(BigUint::from(1u32), |acc, i| acc * (&q - BigUint::from(p).pow(i)))
}

/// 2x2 matrix acting on the projective line by (x,1) -> (x,1)M.
pub type Mat2 = [[FieldElem; 2]; 2];

/// The permutation of the projective line (field elements by index, then infinity) induced by `m`.
pub fn mobius(ctx: &FieldCtx, m: &Mat2) -> Result<Perm> {
    let q = ctx.order() as usize;
    let det = ctx.sub(&ctx.mul(&m[0][0], &m[1][1]), &ctx.mul(&m[0][1], &m[1][0]));
    if det.is_zero() {
        return Err(Error::Domain("singular matrix".into()));
    }
    let ratio = |num: FieldElem, den: FieldElem| -> Result<u32> {
        if den.is_zero() {
            Ok(q as u32)
        } else {
            Ok(ctx.index(&ctx.mul(&num, &ctx.inv(&den)?)) as u32)
        }
    };
    let mut images = Vec::with_capacity(q + 1);
    for x in ctx.elements() {
        let num = ctx.add(&ctx.mul(&x, &m[0][0]), &m[1][0]);
        let den = ctx.add(&ctx.mul(&x, &m[0][1]), &m[1][1]);
        images.push(ratio(num, den)?);
    }
    images.push(ratio(m[0][0].clone(), m[0][1].clone())?);
    Ok(Perm::from_images_unchecked(images))
}

fn check_psl_q(q: u64) -> Result<FieldCtx> {
    let ctx = field_of_order(q)?;
    if q < 4 {
        return input(format!("PSL(2,{q}) is not simple; need q >= 4"));
    }
    Ok(ctx)
}

fn psl2_generators(ctx: &FieldCtx) -> Result<Vec<Perm>> {
    let (zero, one) = (ctx.zero(), ctx.one());
    let w = ctx.multiplicative_generator();
    let c = if ctx.characteristic() == 2 { w } else { ctx.mul(&w, &w) };
    let translate = [[one.clone(), zero.clone()], [one.clone(), one.clone()]];
    let scale = [[c, zero.clone()], [zero.clone(), one.clone()]];
    let invert = [[zero.clone(), one.clone()], [ctx.neg(&one), zero]];
    [translate, scale, invert].iter().map(|m| mobius(ctx, m)).collect()
}

/// PSL(2,q) on the q+1 points of the projective line.
pub fn psl2(q: u64) -> Result<PermGroup> {
    let ctx = check_psl_q(q)?;
    PermGroup::new(q as usize + 1, psl2_generators(&ctx)?)
}

/// PGL(2,q) on the q+1 points of the projective line.
pub fn pgl2(q: u64) -> Result<PermGroup> {
    let ctx = check_psl_q(q)?;
    let mut gens = psl2_generators(&ctx)?;
    let (zero, one) = (ctx.zero(), ctx.one());
    gens.push(mobius(
        &ctx,
        &[[ctx.multiplicative_generator(), zero.clone()], [zero, one]],
    )?);
    PermGroup::new(q as usize + 1, gens)
}

pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / if q.is_multiple_of(2) { 1 } else { 2 }
}

/// The field automorphism x -> x^p acting on the projective line, for q = 2^f or 9.
pub fn psl2_frobenius(q: u64) -> Result<Perm> {
    let ctx = check_psl_q(q)?;
    if !(q.is_power_of_two() || q == 9) {
        return input(format!("Frobenius twist supported only for q = 2^f or 9, got {q}"));
    }
    let mut images: Vec<u32> = ctx
        .elements()
        .map(|x| ctx.index(&ctx.frobenius(&x, 1)) as u32)
        .collect();
    images.push(q as u32);
    let phi = Perm::from_images_unchecked(images);
    let t = Bsgs::new(&psl2(q)?);
    for g in psl2(q)?.generators() {
        debug_assert!(t.contains_unchecked(&g.conjugate(&phi)));
    }
    Ok(phi)
}

/// PSL(2,q), q in {4,8,16}, on the cosets of a dihedral subgroup of order 2(q+1).
pub fn psl2_on_dihedral_cosets(q: u64, limits: &Limits) -> Result<PermGroup> {
    if ![4, 8, 16].contains(&q) {
        return input(format!(
            "dihedral coset action supported for q in {{4, 8, 16}}, got {q}"
        ));
    }
    let g = psl2(q)?;
    let b = Bsgs::new(&g);
    let els: Vec<Perm> = b.elements(limits.enumeration_cap)?.collect();
    let r = els
        .iter()
        .find(|x| x.order() == q + 1)
        .expect("non-split torus exists")
        .clone();
    let r_inv = r.inverse();
    let s = els
        .iter()
        .find(|x| x.order() == 2 && r.conjugate(x) == r_inv)
        .expect("inverting involution exists")
        .clone();
    let sub = PermGroup::new(g.degree(), vec![r, s])?;
    let act = coset_action(&b, &sub, limits)?;
    PermGroup::new(act.group.degree(), act.group.generators().to_vec())
}

/// PSL(3,2) on the 7 nonzero vectors of GF(2)^3; vector v is point (sum v_i 2^i) - 1.
pub fn psl3_2_on_7() -> PermGroup {
    let apply = |m: &[[u32; 3]; 3]| -> Perm {
        let images = (1..8usize)
            .map(|x| {
                let v: Vec<usize> = (0..3).map(|i| x >> i & 1).collect();
                let w: usize = (0..3)
                    .map(|j| ((0..3).map(|i| v[i] as u32 * m[i][j]).sum::<u32>() % 2) << j)
                    .sum::<u32>() as usize;
                (w - 1) as u32
            })
            .collect();
        Perm::from_images_unchecked(images)
    };
    let t = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
    let c = [[0, 1, 0], [0, 0, 1], [1, 0, 0]];
    PermGroup::new(7, vec![apply(&t), apply(&c)]).expect("valid")
}

/// Alt(7) on the 15 cosets of a subgroup isomorphic to PSL(3,2).
pub fn alt7_on_15(limits: &Limits) -> Result<PermGroup> {
    let a7 = alt_natural(7)?;
    let b = Bsgs::new(&a7);
    let els: Vec<Perm> = b.elements(limits.enumeration_cap)?.collect();
    let a = els.iter().find(|x| x.order() == 2).expect("involution").clone();
    // <a, b | a^2, b^3, (ab)^7, [a,b]^4> presents PSL(3,2).
    let target = BigUint::from(168u32);
    let bb = els
        .iter()
        .find(|x| {
            if x.order() != 3 || (&a * *x).order() != 7 {
                return false;
            }
            let comm = &(&a.inverse() * &x.inverse()) * &(&a * *x);
            if comm.order() != 4 {
                return false;
            }
            let h = PermGroup::new(7, vec![a.clone(), (*x).clone()]).expect("valid");
            Bsgs::new(&h).order() == &target
        })
        .expect("PSL(3,2) subgroup exists")
        .clone();
    let sub = PermGroup::new(7, vec![a, bb])?;
    let act = coset_action(&b, &sub, limits)?;
    Ok(act.group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{is_primitive, is_transitive};

    fn order(g: &PermGroup) -> u64 {
        Bsgs::new(g).order_u64().unwrap()
    }

    #[test]
    fn natural_groups() {
        assert_eq!(order(&sym_natural(4).unwrap()), 24);
        assert_eq!(order(&sym_natural(1).unwrap()), 1);
        for n in 3..=9 {
            let a = alt_natural(n).unwrap();
            assert!(a.generators().iter().all(Perm::is_even));
            assert_eq!(order(&a), (1..=n as u64).product::<u64>() / 2);
        }
        assert!(alt_natural(2).is_err());
    }

    #[test]
    fn subset_actions() {
        let l = Limits::default();
        let s6 = sym_natural(6).unwrap();
        let two = action_on_m_subsets(&s6, 2, &l).unwrap();
        assert_eq!((two.degree(), order(&two)), (15, 720));
        assert!(is_primitive(&two).unwrap());
        assert_eq!(action_on_m_subsets(&s6, 3, &l).unwrap().degree(), 20);
        let s4 = sym_natural(4).unwrap();
        assert_eq!(action_on_m_subsets(&s4, 1, &l).unwrap(), s4);
        assert!(action_on_m_subsets(&s4, 4, &l).is_err());
        assert_eq!(m_subsets(4, 2).len(), 6);
    }

    #[test]
    fn triple_partitions() {
        let g = sym6_on_triple_partitions();
        assert_eq!(g.degree(), 10);
        assert_eq!(order(&g), 720);
        assert!(is_primitive(&g).unwrap());
    }

    #[test]
    fn affine_groups() {
        let l = Limits::default();
        for (d, p, want) in [
            (1, 5, 20),
            (2, 3, 432),
            (1, 2, 2),
            (1, 7, 42),
            (3, 2, 1344),
            (2, 5, 25 * 480),
        ] {
            let g = agl(d, p, &l).unwrap();
            assert_eq!(order(&g), want, "AGL({d},{p})");
            assert_eq!(
                BigUint::from(want),
                BigUint::from(p).pow(d as u32) * gl_order(d as u32, p as u64)
            );
            assert!(is_primitive(&g).unwrap());
        }
        assert!(agl(1, 4, &l).is_err());
    }

    #[test]
    fn projective_lines() {
        for q in [4, 5, 7, 8, 9, 11, 13, 16] {
            let g = psl2(q).unwrap();
            assert_eq!(g.degree() as u64, q + 1);
            assert_eq!(order(&g), psl2_order(q), "PSL(2,{q})");
            let b = Bsgs::new(&g);
            // 2-transitive: the point stabilizer is transitive on the rest.
            let stab = b.point_stabilizer(0);
            let orbit = crate::orbits::orbits(&stab.to_group(), Some(&[1]));
            assert_eq!(orbit.orbits()[0].len() as u64, q);
            assert_eq!(order(&pgl2(q).unwrap()), q * (q * q - 1));
        }
        assert!(psl2(3).is_err());
        assert!(psl2(6).is_err());
    }

    #[test]
    fn frobenius_normalizes() {
        for (q, f) in [(4, 2), (8, 3), (16, 4), (9, 2)] {
            let phi = psl2_frobenius(q).unwrap();
            assert_eq!(phi.order(), f);
            let t = Bsgs::new(&psl2(q).unwrap());
            for g in psl2(q).unwrap().generators() {
                assert!(t.contains(&g.conjugate(&phi)).unwrap());
            }
        }
        assert!(psl2_frobenius(7).is_err());
    }

    #[test]
    fn dihedral_cosets() {
        let l = Limits::default();
        for (q, deg) in [(4, 6), (8, 28), (16, 120)] {
            let g = psl2_on_dihedral_cosets(q, &l).unwrap();
            assert_eq!(g.degree(), deg);
            assert_eq!(order(&g), psl2_order(q));
            assert!(is_primitive(&g).unwrap());
        }
        assert!(psl2_on_dihedral_cosets(5, &l).is_err());
    }

    #[test]
    fn psl2_4_on_cosets_of_d10() {
        // A dihedral subgroup of order 10 in PSL(2,4) has index 6.
        let g = psl2(4).unwrap();
        let b = Bsgs::new(&g);
        let els: Vec<Perm> = b.elements(100).unwrap().collect();
        let r = els.iter().find(|x| x.order() == 5).unwrap().clone();
        let s = els
            .iter()
            .find(|x| x.order() == 2 && r.conjugate(x) == r.inverse())
            .unwrap()
            .clone();
        let d10 = PermGroup::new(5, vec![r, s]).unwrap();
        assert_eq!(order(&d10), 10);
        let act = coset_action(&b, &d10, &Limits::default()).unwrap();
        assert_eq!(act.group.degree(), 6);
    }

    #[test]
    fn small_exceptional_actions() {
        let g = psl3_2_on_7();
        assert_eq!(order(&g), 168);
        assert!(is_primitive(&g).unwrap());
        let stab = Bsgs::new(&g).point_stabilizer(0).to_group();
        assert_eq!(crate::orbits::orbits(&stab, None).orbits().len(), 2);

        let a = alt7_on_15(&Limits::default()).unwrap();
        assert_eq!(a.degree(), 15);
        assert_eq!(order(&a), 2520);
        assert!(is_transitive(&a));
        assert!(is_primitive(&a).unwrap());
    }
}
