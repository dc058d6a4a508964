//! Group constructions and induced actions.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::bsgs::Bsgs;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::orbits::orbit_partition;
use crate::perm::Perm;

/// Size limits shared by constructions and searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub degree_cap: u64,
    pub enumeration_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            degree_cap: 1_000_000,
            enumeration_cap: 1_000_000,
        }
    }
}

impl Limits {
    pub fn check_degree(&self, needed: u128) -> Result<usize> {
        if needed > self.degree_cap as u128 {
            return Err(Error::Capacity {
                what: "degree",
                cap: self.degree_cap,
                needed: needed.to_string(),
            });
        }
        Ok(needed as usize)
    }
}

fn shifted(p: &Perm, offset: usize, degree: usize) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for i in 0..p.degree() {
        images[i + offset] = (p.image(i) + offset) as u32;
    }
    Perm::from_images_unchecked(images)
}

/// `g x h` acting on the disjoint union, `g` on the first points.
pub fn direct_product(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let n = limits.check_degree(g.degree() as u128 + h.degree() as u128)?;
    let gens = g
        .generators()
        .iter()
        .map(|p| shifted(p, 0, n))
        .chain(h.generators().iter().map(|p| shifted(p, g.degree(), n)))
        .collect();
    PermGroup::new(n, gens)
}

/// Standard generators of Sym(k): a transposition and a k-cycle.
pub fn symmetric_generators(k: usize) -> Vec<Perm> {
    if k < 2 {
        return Vec::new();
    }
    let t = Perm::from_cycles(k, &[&[0, 1]]).expect("valid");
    let cycle: Vec<usize> = (0..k).collect();
    let c = Perm::from_cycles(k, &[&cycle]).expect("valid");
    vec![t, c]
}

/// `h wr Sym(k)` in its imprimitive action on `k` blocks of size `deg(h)`.
pub fn wreath_imprimitive(h: &PermGroup, k: usize, limits: &Limits) -> Result<PermGroup> {
    if k == 0 {
        return Err(Error::Input("wreath product needs k >= 1".into()));
    }
    let m = h.degree();
    let n = limits.check_degree(m as u128 * k as u128)?;
    let mut gens: Vec<Perm> = h.generators().iter().map(|p| shifted(p, 0, n)).collect();
    for s in symmetric_generators(k) {
        let images = (0..n).map(|x| (s.image(x / m) * m + x % m) as u32).collect();
        gens.push(Perm::from_images_unchecked(images));
    }
    PermGroup::new(n, gens)
}

/// Mixed-radix encoding of points of `Γ^k`: coordinate `i` has stride `|Γ|^(k-1-i)`.
pub fn encode_tuple(tuple: &[usize], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * m + x)
}

pub fn decode_tuple(mut point: usize, m: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        out[i] = point % m;
        point /= m;
    }
    out
}

/// `h wr top` in product action on `Γ^k`, `top` permuting coordinates.
pub fn wreath_product_action(h: &PermGroup, k: usize, top: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    if k == 0 || top.degree() != k {
        return Err(Error::Input(format!(
            "top group must act on k = {k} coordinates (has degree {})",
            top.degree()
        )));
    }
    let m = h.degree();
    let n = limits.check_degree((m as u128).pow(k as u32))?;
    let mut gens = Vec::new();
    for coord in 0..k {
        for s in h.generators() {
            let images = (0..n)
                .map(|x| {
                    let mut t = decode_tuple(x, m, k);
                    t[coord] = s.image(t[coord]);
                    encode_tuple(&t, m) as u32
                })
                .collect();
            gens.push(Perm::from_images_unchecked(images));
        }
    }
    for s in top.generators() {
        let images = (0..n)
            .map(|x| {
                let t = decode_tuple(x, m, k);
                let mut u = vec![0; k];
                for (i, &v) in t.iter().enumerate() {
                    u[s.image(i)] = v;
                }
                encode_tuple(&u, m) as u32
            })
            .collect();
        gens.push(Perm::from_images_unchecked(images));
    }
    PermGroup::new(n, gens)
}

/// A group acting on the right cosets of a subgroup, with one representative per coset.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub group: PermGroup,
    pub representatives: Vec<Perm>,
}

struct CosetTable<'a> {
    sub: &'a Bsgs,
    orbit_id: Vec<usize>,
    buckets: HashMap<Vec<u32>, Vec<usize>>,
    reps: Vec<Perm>,
}

impl CosetTable<'_> {
    // Invariant of the coset Hx: the orbit of H containing x^-1(p), for every p.
    fn key(&self, x: &Perm) -> Vec<u32> {
        let inv = x.inverse();
        (0..x.degree()).map(|p| self.orbit_id[inv.image(p)] as u32).collect()
    }

    fn find(&self, key: &[u32], x: &Perm) -> Option<usize> {
        let bucket = self.buckets.get(key)?;
        bucket.iter().copied().find(|&i| {
            let quotient = x * &self.reps[i].inverse();
            self.sub.contains_unchecked(&quotient)
        })
    }

    fn insert(&mut self, key: Vec<u32>, x: Perm) -> usize {
        let idx = self.reps.len();
        self.buckets.entry(key).or_default().push(idx);
        self.reps.push(x);
        idx
    }
}

/// The action of `generators` (spanning the group of `b`) on the right cosets of `subgroup`.
pub fn coset_action_on(b: &Bsgs, generators: &[Perm], subgroup: &PermGroup, limits: &Limits) -> Result<CosetAction> {
    for s in subgroup.generators() {
        if !b.contains(s)? {
            return Err(Error::Input(format!("subgroup generator {s} is not in the group")));
        }
    }
    let sub = Bsgs::new(subgroup);
    let index = b.order() / sub.order();
    let index = index.to_u128().unwrap_or(u128::MAX);
    let degree = limits.check_degree(index)?;

    let n = b.degree();
    let parts = orbit_partition(n, sub.strong_generators(), None);
    let mut orbit_id = vec![0; n];
    for (i, o) in parts.orbits().iter().enumerate() {
        for &p in o {
            orbit_id[p] = i;
        }
    }
    let mut table = CosetTable {
        sub: &sub,
        orbit_id,
        buckets: HashMap::new(),
        reps: Vec::new(),
    };
    let id = Perm::identity(n);
    let k = table.key(&id);
    table.insert(k, id);

    let mut images: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
    let mut pos = 0;
    while pos < table.reps.len() {
        for (gi, s) in generators.iter().enumerate() {
            let y = &table.reps[pos] * s;
            let key = table.key(&y);
            let target = match table.find(&key, &y) {
                Some(t) => t,
                None => table.insert(key, y),
            };
            images[gi].push(target as u32);
        }
        pos += 1;
    }
    debug_assert_eq!(table.reps.len(), degree);
    let gens = images.into_iter().map(Perm::from_images_unchecked).collect();
    Ok(CosetAction {
        group: PermGroup::new(degree, gens)?,
        representatives: table.reps,
    })
}

/// The action of the group of `b` on the right cosets of `subgroup`.
pub fn coset_action(b: &Bsgs, subgroup: &PermGroup, limits: &Limits) -> Result<CosetAction> {
    let gens = b.strong_generators().to_vec();
    coset_action_on(b, &gens, subgroup, limits)
}

/// Generators of the centralizer of `x` in the group of `b`, by enumeration.
pub fn centralizer_of_element(b: &Bsgs, x: &Perm, limits: &Limits) -> Result<PermGroup> {
    if !b.contains(x)? {
        return Err(Error::Input(format!("{x} is not a member of the group")));
    }
    let mut gens: Vec<Perm> = Vec::new();
    let mut current = Bsgs::new(&PermGroup::trivial(b.degree()));
    for g in b.elements(limits.enumeration_cap)? {
        if g.commutes_with(x) && !current.contains_unchecked(&g) {
            gens.push(g);
            current = Bsgs::build(b.degree(), &gens, &[], None);
        }
    }
    PermGroup::new(b.degree(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect()).unwrap()
    }

    fn order(g: &PermGroup) -> u64 {
        Bsgs::new(g).order_u64().unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        PermGroup::new(n, symmetric_generators(n)).unwrap()
    }

    #[test]
    fn products() {
        let l = Limits::default();
        let d = direct_product(&sym(2), &sym(2), &l).unwrap();
        assert_eq!((d.degree(), order(&d)), (4, 4));
        let w = wreath_product_action(&sym(5), 2, &sym(2), &l).unwrap();
        assert_eq!((w.degree(), order(&w)), (25, 28800));
        let one = wreath_product_action(&sym(5), 1, &PermGroup::trivial(1), &l).unwrap();
        assert_eq!(one.generators(), sym(5).generators());
        let imp = wreath_imprimitive(&sym(3), 2, &l).unwrap();
        assert_eq!((imp.degree(), order(&imp)), (6, 72));
        let small = Limits {
            degree_cap: 20,
            ..Limits::default()
        };
        assert!(matches!(
            wreath_product_action(&sym(5), 2, &sym(2), &small),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn tuple_encoding() {
        assert_eq!(encode_tuple(&[1, 2], 5), 7);
        assert_eq!(decode_tuple(7, 5, 2), vec![1, 2]);
    }

    #[test]
    fn coset_actions() {
        let l = Limits::default();
        let s3 = Bsgs::new(&sym(3));
        let act = coset_action(&s3, &group(3, &["(1 2)"]), &l).unwrap();
        assert_eq!(act.group.degree(), 3);
        assert!(crate::orbits::is_transitive(&act.group));
        assert_eq!(order(&act.group), 6);

        let whole = coset_action(&s3, &sym(3), &l).unwrap();
        assert_eq!(whole.group.degree(), 1);

        let err = coset_action(&s3, &group(3, &["(1 2 3)", "(1 2)", "(1 3)"]), &l);
        assert!(err.is_ok());
        let a4 = Bsgs::new(&group(4, &["(1 2 3)", "(2 3 4)"]));
        assert!(matches!(
            coset_action(&a4, &group(4, &["(1 2)"]), &l),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn coset_action_degree_times_subgroup_order() {
        let l = Limits::default();
        let s5 = Bsgs::new(&sym(5));
        for sub in [
            group(5, &["(1 2)"]),
            group(5, &["(1 2 3 4 5)", "(2 5)(3 4)"]),
            group(5, &["(1 2 3)", "(4 5)"]),
        ] {
            let act = coset_action(&s5, &sub, &l).unwrap();
            assert_eq!(act.group.degree() as u64 * order(&sub), 120);
            assert_eq!(act.representatives.len(), act.group.degree());
        }
    }

    #[test]
    fn centralizers() {
        let l = Limits::default();
        let s3 = Bsgs::new(&sym(3));
        let c = centralizer_of_element(&s3, &Perm::parse(3, "(1 2 3)").unwrap(), &l).unwrap();
        assert_eq!(order(&c), 3);
        let a5 = Bsgs::new(&group(5, &["(1 2 3)", "(3 4 5)"]));
        let x = Perm::parse(5, "(1 2)(3 4)").unwrap();
        // Brute force over all 60 elements.
        let brute = a5.elements(100).unwrap().filter(|g| g.commutes_with(&x)).count();
        assert_eq!(brute, 4);
        assert_eq!(order(&centralizer_of_element(&a5, &x, &l).unwrap()), 4);
        let whole = centralizer_of_element(&a5, &Perm::identity(5), &l).unwrap();
        assert_eq!(order(&whole), 60);
        let tiny = Limits {
            enumeration_cap: 10,
            ..Limits::default()
        };
        assert!(matches!(
            centralizer_of_element(&a5, &x, &tiny),
            Err(Error::Capacity { .. })
        ));
    }

    /// Breadth-first closure over generators, independent of Schreier–Sims.
    fn closure_size(g: &PermGroup) -> usize {
        let mut seen: HashSet<Perm> = HashSet::new();
        let id = Perm::identity(g.degree());
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for s in g.generators() {
                let y = &x * s;
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn enumeration_matches_closure_oracle() {
        let l = Limits::default();
        let cases = vec![
            sym(5),
            sym(7),
            group(8, &["(1 2 3 4 5 6 7 8)", "(1 8)(2 7)(3 6)(4 5)"]),
            group(6, &["(1 2 3)(4 5 6)", "(1 4)"]),
            group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(2 4)(3 7)"]),
            wreath_imprimitive(&sym(2), 4, &l).unwrap(),
            direct_product(&sym(3), &group(4, &["(1 2 3 4)"]), &l).unwrap(),
        ];
        for g in cases {
            let b = Bsgs::new(&g);
            let n = b.order_u64().unwrap();
            assert!(n <= 5040 && g.degree() <= 8);
            let els: HashSet<Perm> = b.elements(10_000).unwrap().collect();
            assert_eq!(els.len() as u64, n);
            assert_eq!(closure_size(&g) as u64, n);
        }
    }
}
