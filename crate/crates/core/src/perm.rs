//! Permutations of `{0, .., n-1}` stored as image vectors.
//!
//! Composition follows the right-action convention: in `p * q` the point is
//! first moved by `p`, then by `q`.

use std::fmt;
use std::ops::Mul;

use crate::error::{input, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return input(format!("image sequence is not a bijection on {n} points"));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Perm { images }
    }

    /// Builds a permutation of degree `n` from disjoint cycles of 0-based points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return input(format!("point {} outside degree {n}", a + 1));
                }
                if touched[a] {
                    return input(format!("point {} repeated in cycle notation", a + 1));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.image(point) == point
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Checked composition: `i` is sent to `q(p(i))`.
    pub fn compose(&self, q: &Perm) -> Result<Perm> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self * q)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `by^-1 * self * by`.
    pub fn conjugate(&self, by: &Perm) -> Perm {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[by.images[i] as usize] = by.images[x as usize];
        }
        Perm { images: out }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Parses 1-based disjoint cycle notation such as `(1 2)(3 4 5)`; `()` is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Perm> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return input(format!("expected '(' in cycle notation `{text}`"));
            };
            let Some(close) = body.find(')') else {
                return input(format!("unclosed cycle in `{text}`"));
            };
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Input(format!("bad point `{tok}` in `{text}`")))?;
                if v == 0 || v > n {
                    return input(format!("point {v} outside 1..={n}"));
                }
                cycle.push(v - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }
}

impl Mul<&Perm> for &Perm {
    type Output = Perm;

    #[inline]
    fn mul(self, q: &Perm) -> Perm {
        assert_eq!(self.degree(), q.degree(), "degree mismatch in composition");
        Perm {
            images: self.images.iter().map(|&x| q.images[x as usize]).collect(),
        }
    }
}

/// 1-based cycle notation, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn compose_examples() {
        let t = cyc(4, "(1 2)");
        assert_eq!(Perm::identity(4).compose(&t).unwrap(), t);
        let s = cyc(2, "(1 2)");
        assert_eq!(s.compose(&s).unwrap(), Perm::identity(2));
        // (0 1 2) twice: 0 -> 1 -> 2, 1 -> 2 -> 0, 2 -> 0 -> 1.
        let c = cyc(3, "(1 2 3)");
        assert_eq!(c.compose(&c).unwrap(), cyc(3, "(1 3 2)"));
    }

    #[test]
    fn compose_is_left_to_right() {
        let p = cyc(3, "(1 2)");
        let q = cyc(3, "(2 3)");
        // 0 -p-> 1 -q-> 2
        assert_eq!((&p * &q).image(0), 2);
    }

    #[test]
    fn compose_degree_mismatch() {
        let err = Perm::identity(3).compose(&Perm::identity(4)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch(3, 4));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert!(Perm::parse(4, "(1 2)(2 3)").is_err());
        assert!(Perm::parse(4, "(1 5)").is_err());
        assert!(Perm::parse(4, "1 2").is_err());
    }

    #[test]
    fn display_and_order() {
        let p = cyc(6, "(1 2)(3 4 5)");
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(p.order(), 6);
        assert!(!p.is_even());
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert_eq!(cyc(5, "()"), Perm::identity(5));
        assert_eq!(p.pow(6), Perm::identity(6));
    }

    #[test]
    fn conjugate_matches_products() {
        let p = cyc(5, "(1 2 3)");
        let g = cyc(5, "(1 4)(2 5)");
        assert_eq!(p.conjugate(&g), &(&g.inverse() * &p) * &g);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_and_format_round_trip(p in (1usize..12).prop_flat_map(arb_perm)) {
            let n = p.degree();
            prop_assert!((&p * &p.inverse()).is_identity());
            prop_assert_eq!(Perm::parse(n, &p.to_string()).unwrap(), p.clone());
            prop_assert!(p.pow(p.order()).is_identity());
        }

        #[test]
        fn commutes_with_agrees_with_products(
            (p, q) in (1usize..9).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))
        ) {
            prop_assert_eq!(p.commutes_with(&q), &p * &q == &q * &p);
        }
    }
}
