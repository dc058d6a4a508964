//! Small finite fields GF(p^f) with fixed moduli.
//!
//! Elements are coefficient vectors, constant term first. Element `i` of the
//! enumeration has coefficients given by the base-`p` digits of `i`, least
//! significant digit first, so `0, 1, .., p-1` are the prime-field elements.

use crate::error::{input, Error, Result};

const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: Vec<u32>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u32,
    f: u32,
    /// Monic modulus, constant term first, length f + 1.
    modulus: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Constructs GF(p^f) with its fixed modulus.
pub fn field(p: u32, f: u32) -> Result<FieldCtx> {
    if !is_prime(p as u64) {
        return input(format!("{p} is not prime"));
    }
    if f == 0 {
        return input("field exponent must be positive");
    }
    let modulus = match (p, f) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (3, 2) => vec![1, 0, 1],
        _ => return input(format!("GF({p}^{f}) is not supported")),
    };
    let q = (p as u64).pow(f);
    if q > MAX_ORDER {
        return input(format!("field order {q} exceeds {MAX_ORDER}"));
    }
    let ctx = FieldCtx { p, f, modulus };
    if ctx.multiplicative_generator_opt().is_none() {
        return Err(Error::Domain(format!("modulus for GF({p}^{f}) is not irreducible")));
    }
    Ok(ctx)
}

/// GF(q) for a prime power `q` among the supported fields.
pub fn field_of_order(q: u64) -> Result<FieldCtx> {
    let primes = prime_factors(q);
    if primes.len() != 1 {
        return input(format!("{q} is not a prime power"));
    }
    let p = primes[0];
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    field(p as u32, f)
}

impl FieldCtx {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: vec![0; self.f as usize],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = k.rem_euclid(self.p as i64) as u32;
        e
    }

    /// The polynomial generator `x` (equal to 0 in prime fields).
    pub fn x(&self) -> FieldElem {
        if self.f == 1 {
            return self.zero();
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    pub fn element(&self, index: u64) -> FieldElem {
        assert!(index < self.order(), "field index out of range");
        let mut r = index;
        let coeffs = (0..self.f)
            .map(|_| {
                let c = (r % self.p as u64) as u32;
                r /= self.p as u64;
                c
            })
            .collect();
        FieldElem { coeffs }
    }

    pub fn index(&self, a: &FieldElem) -> u64 {
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let f = self.f as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce using x^f = -(m_0 + m_1 x + ... + m_{f-1} x^{f-1}).
        for d in (f..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &m) in self.modulus[..f].iter().enumerate() {
                let idx = d - f + k;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        FieldElem {
            coeffs: prod[..f].iter().map(|&c| c as u32).collect(),
        }
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::Domain("inversion of zero".into()));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: &FieldElem, i: u32) -> FieldElem {
        let mut out = a.clone();
        for _ in 0..i {
            out = self.pow(&out, self.p as u64);
        }
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::Domain("zero has no multiplicative order".into()));
        }
        let mut ord = self.order() - 1;
        for r in prime_factors(ord) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    fn multiplicative_generator_opt(&self) -> Option<FieldElem> {
        let target = self.order() - 1;
        (1..self.order()).map(|i| self.element(i)).find(|a| {
            // A reducible modulus yields zero divisors, which have no order.
            self.pow(a, target) == self.one() && self.multiplicative_order(a).ok() == Some(target)
        })
    }

    /// The first element in enumeration order generating the multiplicative group.
    pub fn multiplicative_generator(&self) -> FieldElem {
        self.multiplicative_generator_opt().expect("checked at construction")
    }

    /// The first element in enumeration order of exact multiplicative order `d`.
    pub fn element_of_order(&self, d: u64) -> Result<FieldElem> {
        let q1 = self.order() - 1;
        if d == 0 || !q1.is_multiple_of(d) {
            return input(format!("{d} does not divide {q1}"));
        }
        (1..self.order())
            .map(|i| self.element(i))
            .find(|a| self.multiplicative_order(a).ok() == Some(d))
            .ok_or_else(|| Error::Domain(format!("no element of order {d}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const SMALL: [(u32, u32); 9] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (13, 1)];

    #[test]
    fn construction() {
        assert_eq!(field(2, 2).unwrap().order(), 4);
        assert_eq!(field(5, 1).unwrap().order(), 5);
        assert!(field(4, 1).is_err());
        assert!(field(5, 2).is_err());
        assert!(field(1_048_583, 1).is_err());
        assert_eq!(field_of_order(9).unwrap().degree(), 2);
        assert!(field_of_order(12).is_err());
    }

    #[test]
    fn small_identities() {
        let f4 = field(2, 2).unwrap();
        let x = f4.x();
        assert_eq!(f4.mul(&x, &x), f4.add(&x, &f4.one()));
        let f8 = field(2, 3).unwrap();
        for a in f8.elements() {
            assert_eq!(f8.frobenius(&a, 3), a);
        }
        let f9 = field(3, 2).unwrap();
        let two = f9.from_int(2);
        assert_eq!(f9.mul(&two, &f9.inv(&two).unwrap()), f9.one());
        assert!(f9.inv(&f9.zero()).is_err());
    }

    #[test]
    fn elements_of_given_order() {
        let f4 = field(2, 2).unwrap();
        let a = f4.element_of_order(3).unwrap();
        assert_eq!(f4.pow(&a, 3), f4.one());
        assert_ne!(a, f4.one());
        // Brute force over GF(16): the first element with a^5 = 1 and a != 1.
        let f16 = field(2, 4).unwrap();
        let expected = f16
            .elements()
            .find(|a| !a.is_zero() && *a != f16.one() && f16.pow(a, 5) == f16.one())
            .unwrap();
        assert_eq!(f16.element_of_order(5).unwrap(), expected);
        assert!(f16.element_of_order(5).unwrap() != f16.one());
        let f8 = field(2, 3).unwrap();
        assert!(f8.element_of_order(4).is_err());
        let g = f8.multiplicative_generator();
        assert_eq!(f8.multiplicative_order(&g).unwrap(), 7);
    }

    #[test]
    fn index_round_trip() {
        for (p, f) in SMALL {
            let k = field(p, f).unwrap();
            for i in 0..k.order() {
                assert_eq!(k.index(&k.element(i)), i);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, f) in SMALL {
            let k = field(p, f).unwrap();
            let els: Vec<FieldElem> = k.elements().collect();
            for a in &els {
                for b in &els {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in &els {
                        assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
                        assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
                        assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
                    }
                    for i in 0..f {
                        assert_eq!(
                            k.frobenius(&k.mul(a, b), i),
                            k.mul(&k.frobenius(a, i), &k.frobenius(b, i))
                        );
                        assert_eq!(
                            k.frobenius(&k.add(a, b), i),
                            k.add(&k.frobenius(a, i), &k.frobenius(b, i))
                        );
                    }
                }
                if !a.is_zero() {
                    assert_eq!(k.pow(a, k.order() - 1), k.one());
                    assert_eq!(k.mul(a, &k.inv(a).unwrap()), k.one());
                }
                assert!(k.add(a, &k.neg(a)).is_zero());
            }
        }
    }

    #[test]
    fn sampled_axioms_large_prime() {
        let k = field(1_048_573, 1).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        let mut next = || k.element(rng.gen_range(0..k.order()));
        for _ in 0..1000 {
            let (a, b, c) = (next(), next(), next());
            assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
        }
    }
}
