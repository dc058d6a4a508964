use std::collections::HashMap;

use crate::actions::{decode_tuple, encode_tuple, wreath_product_action, Limits};
use crate::bsgs::Bsgs;
use crate::error::{input, Error, Result};
use crate::group::PermGroup;
use crate::orbits::{is_primitive, is_transitive};
use crate::perm::Perm;

/// Data for a group between `T^k` and `W(k,T)`.
#[derive(Clone, Debug)]
pub struct DiagonalSpec {
    pub t: PermGroup,
    pub k: usize,
    /// Coordinate permutations adjoined as `(1,…,1)π`; acts on `k` points.
    pub top: PermGroup,
    /// Automorphisms of `T` (as permutations of its domain) adjoined diagonally.
    pub outer: Vec<Perm>,
    /// For `k = 2`: adjoin `(y,y)σ` with `σ` swapping the coordinates.
    pub twist: Option<Perm>,
}

impl DiagonalSpec {
    pub fn new(t: PermGroup, k: usize) -> DiagonalSpec {
        DiagonalSpec {
            t,
            k,
            top: PermGroup::trivial(k.max(1)),
            outer: Vec::new(),
            twist: None,
        }
    }
}

/// A diagonal-type group with the labelling of its points.
///
/// Point `p` is the coset `[1, t_2, …, t_k]` where `(t_2, …, t_k)` are the
/// enumeration indices of `p` in mixed radix `|T|`.
#[derive(Clone, Debug)]
pub struct DiagonalGroup {
    pub group: PermGroup,
    pub k: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl DiagonalGroup {
    /// Elements of `T` in enumeration order.
    pub fn socle_factor_elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element_index(&self, t: &Perm) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// The point `[1, t_2, …, t_k]`.
    pub fn point(&self, tail: &[Perm]) -> Result<usize> {
        if tail.len() + 1 != self.k {
            return input(format!("expected {} coordinates after the leading 1", self.k - 1));
        }
        let idx = tail
            .iter()
            .map(|t| {
                self.element_index(t)
                    .ok_or_else(|| Error::Input(format!("{t} is not in the socle factor")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(encode_tuple(&idx, self.elements.len()))
    }

    /// The coordinates `t_2, …, t_k` of a point.
    pub fn label(&self, point: usize) -> Vec<&Perm> {
        decode_tuple(point, self.elements.len(), self.k - 1)
            .into_iter()
            .map(|i| &self.elements[i])
            .collect()
    }
}

fn normalizes(t: &Bsgs, gens: &[Perm], a: &Perm) -> bool {
    gens.iter().all(|s| t.contains_unchecked(&s.conjugate(a)))
}

pub fn diagonal_group(spec: &DiagonalSpec, limits: &Limits) -> Result<DiagonalGroup> {
    let k = spec.k;
    if k < 2 {
        return input("diagonal groups need k >= 2");
    }
    if spec.top.degree() != k {
        return input(format!("top group must act on {k} points"));
    }
    if !spec.top.generators().is_empty() && !is_transitive(&spec.top) {
        return input("a nontrivial top group must be transitive");
    }
    let tb = Bsgs::new(&spec.t);
    let tgens = spec.t.generators();
    let m = tb.order_u64().unwrap_or(u64::MAX);
    if m > limits.enumeration_cap {
        return Err(Error::Capacity {
            what: "enumeration",
            cap: limits.enumeration_cap,
            needed: tb.order().to_string(),
        });
    }
    let n = limits.check_degree((m as u128).pow(k as u32 - 1))?;
    let m = m as usize;
    for a in &spec.outer {
        if a.degree() != spec.t.degree() || !normalizes(&tb, tgens, a) {
            return input(format!("outer element {a} does not normalize T"));
        }
    }
    if let Some(y) = &spec.twist {
        if k != 2 {
            return input("the coordinate-swap twist needs k = 2");
        }
        if y.degree() != spec.t.degree() || !normalizes(&tb, tgens, y) {
            return input(format!("twist {y} does not normalize T"));
        }
        let mut hgens = tgens.to_vec();
        hgens.extend(spec.outer.iter().cloned());
        let h = Bsgs::build(spec.t.degree(), &hgens, &[], None);
        if !h.contains_unchecked(&y.pow(2)) {
            return input("twist y must satisfy y^2 in H");
        }
    }

    let elements: Vec<Perm> = tb.elements(limits.enumeration_cap)?.collect();
    let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let idx = |p: &Perm| index[p];
    let inverse: Vec<usize> = elements.iter().map(|t| idx(&t.inverse())).collect();
    let product = |i: usize, j: usize| -> usize { idx(&(&elements[i] * &elements[j])) };

    let tuple_perm = |f: &dyn Fn(&[usize]) -> Vec<usize>| -> Perm {
        let images = (0..n)
            .map(|p| encode_tuple(&f(&decode_tuple(p, m, k - 1)), m) as u32)
            .collect();
        Perm::from_images_unchecked(images)
    };

    let mut gens = Vec::new();
    for s in tgens {
        let si = idx(s);
        let left: Vec<usize> = (0..m).map(|t| product(inverse[si], t)).collect();
        let right: Vec<usize> = (0..m).map(|t| product(t, si)).collect();
        gens.push(tuple_perm(&|x| x.iter().map(|&t| left[t]).collect()));
        for c in 0..k - 1 {
            gens.push(tuple_perm(&|x| {
                let mut y = x.to_vec();
                y[c] = right[y[c]];
                y
            }));
        }
    }
    let identity = idx(&Perm::identity(spec.t.degree()));
    for sigma in spec.top.generators() {
        gens.push(tuple_perm(&|x| {
            let mut full = vec![identity; k];
            full[1..].copy_from_slice(x);
            let mut y = vec![0; k];
            for (i, &v) in full.iter().enumerate() {
                y[sigma.image(i)] = v;
            }
            let lead = inverse[y[0]];
            y[1..].iter().map(|&v| product(lead, v)).collect()
        }));
    }
    let conj_table = |a: &Perm| -> Vec<usize> { elements.iter().map(|t| idx(&t.conjugate(a))).collect() };
    for a in &spec.outer {
        let table = conj_table(a);
        gens.push(tuple_perm(&|x| x.iter().map(|&t| table[t]).collect()));
    }
    if let Some(y) = &spec.twist {
        let table = conj_table(y);
        gens.push(tuple_perm(&|x| vec![table[inverse[x[0]]]]));
    }
    let group = PermGroup::new(n, gens)?;
    Ok(DiagonalGroup {
        group,
        k,
        elements,
        index,
    })
}

/// `h wr top` in product action; `h` must be primitive and not regular, `top` transitive.
pub fn product_action_group(h: &PermGroup, k: usize, top: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    if top.degree() != k || !is_transitive(top) {
        return input(format!("top group must be transitive on {k} points"));
    }
    if !is_primitive(h)? {
        return Err(Error::Precondition("component group must be primitive".into()));
    }
    let hb = Bsgs::new(h);
    if hb.order_u64() == Some(h.degree() as u64) {
        return Err(Error::Precondition("component group must not be regular".into()));
    }
    limits.check_degree((h.degree() as u128).pow(k as u32))?;
    let g = wreath_product_action(h, k, top, limits)?;
    debug_assert!(is_primitive(&g).unwrap_or(false));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::symmetric_generators;
    use crate::catalog::classical::{alt_natural, psl2, psl2_frobenius, sym_natural};

    fn order(g: &PermGroup) -> u64 {
        Bsgs::new(g).order_u64().unwrap()
    }

    fn sym(k: usize) -> PermGroup {
        PermGroup::new(k, symmetric_generators(k)).unwrap()
    }

    #[test]
    fn basic_diagonal_orders() {
        let l = Limits::default();
        let d = diagonal_group(&DiagonalSpec::new(psl2(4).unwrap(), 2), &l).unwrap();
        assert_eq!((d.group.degree(), order(&d.group)), (60, 3600));
        assert!(is_primitive(&d.group).unwrap());

        let mut spec = DiagonalSpec::new(alt_natural(5).unwrap(), 2);
        spec.top = sym(2);
        let d = diagonal_group(&spec, &l).unwrap();
        assert_eq!((d.group.degree(), order(&d.group)), (60, 7200));

        let mut spec = DiagonalSpec::new(alt_natural(5).unwrap(), 3);
        spec.top = sym(3);
        let d = diagonal_group(&spec, &l).unwrap();
        assert_eq!(d.group.degree(), 3600);
        assert_eq!(order(&d.group), 60 * 60 * 60 * 6);
        assert!(is_primitive(&d.group).unwrap());
    }

    #[test]
    fn socle_point_stabilizer_is_diagonal() {
        let l = Limits::default();
        for t in [psl2(4).unwrap(), psl2(7).unwrap()] {
            let d = diagonal_group(&DiagonalSpec::new(t.clone(), 2), &l).unwrap();
            let b = Bsgs::new(&d.group);
            let origin = d.point(&[Perm::identity(t.degree())]).unwrap();
            assert_eq!(origin, d.element_index(&Perm::identity(t.degree())).unwrap());
            assert_eq!(b.point_stabilizer(origin).order_u64(), Some(order(&t)));
            assert!(is_transitive(&d.group));
        }
    }

    #[test]
    fn outer_and_twist() {
        let l = Limits::default();
        let phi = psl2_frobenius(4).unwrap();
        let mut spec = DiagonalSpec::new(psl2(4).unwrap(), 2);
        spec.outer = vec![phi.clone()];
        let d = diagonal_group(&spec, &l).unwrap();
        assert_eq!(order(&d.group), 7200);

        let mut spec = DiagonalSpec::new(psl2(4).unwrap(), 2);
        spec.twist = Some(phi);
        let d = diagonal_group(&spec, &l).unwrap();
        assert_eq!(order(&d.group), 7200);

        // phi^2 is not inner for q = 8.
        let mut spec = DiagonalSpec::new(psl2(8).unwrap(), 2);
        spec.twist = Some(psl2_frobenius(8).unwrap());
        assert!(matches!(diagonal_group(&spec, &l), Err(Error::Input(_))));

        let mut spec = DiagonalSpec::new(alt_natural(5).unwrap(), 2);
        spec.outer = vec![Perm::from_cycles(5, &[&[0, 1, 2, 3]]).unwrap()];
        assert_eq!(order(&diagonal_group(&spec, &l).unwrap().group), 7200);
        spec.outer = vec![Perm::from_cycles(6, &[&[0, 5]]).unwrap()];
        assert!(diagonal_group(&spec, &l).is_err());
    }

    #[test]
    fn twisted_swap_acts_as_described() {
        let l = Limits::default();
        let t = alt_natural(5).unwrap();
        let y = Perm::from_cycles(5, &[&[0, 1]]).unwrap();
        let mut spec = DiagonalSpec::new(t.clone(), 2);
        spec.twist = Some(y.clone());
        let d = diagonal_group(&spec, &l).unwrap();
        let g = d.group.generators().last().unwrap();
        let a = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let from = d.point(std::slice::from_ref(&a)).unwrap();
        let to = d.point(&[a.inverse().conjugate(&y)]).unwrap();
        assert_eq!(g.image(from), to);
    }

    #[test]
    fn product_action() {
        let l = Limits::default();
        let g = product_action_group(&sym_natural(5).unwrap(), 2, &sym(2), &l).unwrap();
        assert_eq!((g.degree(), order(&g)), (25, 28800));
        assert!(is_primitive(&g).unwrap());
        let b = Bsgs::new(&g);
        assert_eq!(b.order() / b.point_stabilizer(0).order(), 25u32.into());
        let p = product_action_group(&psl2(4).unwrap(), 2, &sym(2), &l).unwrap();
        assert_eq!(order(&p), 7200);
        let one = product_action_group(&sym_natural(5).unwrap(), 1, &PermGroup::trivial(1), &l).unwrap();
        assert_eq!(order(&one), 120);
        assert!(product_action_group(&sym_natural(5).unwrap(), 2, &PermGroup::trivial(2), &l).is_err());
    }
}
