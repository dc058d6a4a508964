//! 3×3 matrix witnesses for PSL(3,q) and PSU(3,q), checked by direct arithmetic.

use std::collections::HashSet;

use crate::error::{input, Result};
use crate::gf::{field, field_of_order, FieldCtx, FieldElem};

/// Row-major 3×3 matrix over a `FieldCtx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[FieldElem; 3]; 3]);

impl Mat3 {
    pub fn identity(ctx: &FieldCtx) -> Mat3 {
        Mat3::from_fn(|i, j| if i == j { ctx.one() } else { ctx.zero() })
    }

    fn from_fn(mut f: impl FnMut(usize, usize) -> FieldElem) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// Upper unitriangular matrix with the given entries above the diagonal.
    pub fn unitriangular(ctx: &FieldCtx, x: FieldElem, y: FieldElem, z: FieldElem) -> Mat3 {
        let mut m = Mat3::identity(ctx);
        m.0[0][1] = x;
        m.0[0][2] = y;
        m.0[1][2] = z;
        m
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            (0..3).fold(ctx.zero(), |acc, k| {
                ctx.add(&acc, &ctx.mul(&self.0[i][k], &other.0[k][j]))
            })
        })
    }

    pub fn commutes(&self, ctx: &FieldCtx, other: &Mat3) -> bool {
        self.mul(ctx, other) == other.mul(ctx, self)
    }

    pub fn is_identity(&self, ctx: &FieldCtx) -> bool {
        *self == Mat3::identity(ctx)
    }

    /// Multiplicative order, or `None` past `cap`.
    pub fn order(&self, ctx: &FieldCtx, cap: u64) -> Option<u64> {
        let mut x = self.clone();
        for n in 1..=cap {
            if x.is_identity(ctx) {
                return Some(n);
            }
            x = x.mul(ctx, self);
        }
        None
    }

    fn map(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Mat3 {
        Mat3::from_fn(|i, j| f(&self.0[i][j]))
    }

    fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[j][i].clone())
    }
}

/// Closure of `gens` under multiplication; `None` if it grows past `cap`.
fn generated(ctx: &FieldCtx, gens: &[Mat3], cap: usize) -> Option<Vec<Mat3>> {
    let id = Mat3::identity(ctx);
    let mut seen: HashSet<Mat3> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = out[i].mul(ctx, g);
            if seen.insert(y.clone()) {
                if out.len() == cap {
                    return None;
                }
                out.push(y);
            }
        }
        i += 1;
    }
    Some(out)
}

/// a ∈ C(c) \ C(b), b ∈ C(c) ∩ C(b) \ C(a), c ∈ C(a) ∩ C(b) ∩ C(c).
fn chain_is_strict(ctx: &FieldCtx, a: &Mat3, b: &Mat3, c: &Mat3) -> bool {
    let in_c = |x: &Mat3| x.commutes(ctx, c);
    let in_cb = |x: &Mat3| in_c(x) && x.commutes(ctx, b);
    let in_cba = |x: &Mat3| in_cb(x) && x.commutes(ctx, a);
    in_c(a) && !in_cb(a) && in_cb(b) && !in_cba(b) && in_cba(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergReport {
    pub p: u32,
    pub order: usize,
    pub non_abelian: bool,
    /// Z(N) = ⟨c⟩.
    pub center_is_c: bool,
    /// Dihedral of order 8 for p = 2, exponent p otherwise.
    pub shape_ok: bool,
    pub chain_ok: bool,
}

impl HeisenbergReport {
    pub fn ok(&self) -> bool {
        let p = self.p as usize;
        self.order == p * p * p && self.non_abelian && self.center_is_c && self.shape_ok && self.chain_ok
    }
}

/// Unitriangular a, b, c over GF(p) in SL(3,p).
pub fn heisenberg_witness(p: u32) -> Result<HeisenbergReport> {
    let ctx = field(p, 1)?;
    let (o, z) = (ctx.one(), ctx.zero());
    let a = Mat3::unitriangular(&ctx, o.clone(), z.clone(), z.clone());
    let b = Mat3::unitriangular(&ctx, z.clone(), z.clone(), o.clone());
    let c = Mat3::unitriangular(&ctx, z.clone(), o, z);
    let cap = (p as usize).pow(3);
    let n = generated(&ctx, &[a.clone(), b.clone()], cap).expect("unitriangular group has order p^3");
    let non_abelian = !a.commutes(&ctx, &b);
    let center: Vec<&Mat3> = n.iter().filter(|x| n.iter().all(|y| x.commutes(&ctx, y))).collect();
    let c_powers = generated(&ctx, std::slice::from_ref(&c), cap).expect("finite");
    let center_is_c = center.len() == c_powers.len() && c_powers.iter().all(|x| center.contains(&x));
    let orders: Vec<u64> = n.iter().map(|x| x.order(&ctx, cap as u64).expect("finite")).collect();
    let shape_ok = if p == 2 {
        orders.iter().filter(|&&o| o == 2).count() == 5 && orders.contains(&4)
    } else {
        orders.iter().all(|&o| o == 1 || o == p as u64)
    };
    Ok(HeisenbergReport {
        p,
        order: n.len(),
        non_abelian,
        center_is_c,
        shape_ok,
        chain_ok: chain_is_strict(&ctx, &a, &b, &c),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryReport {
    pub q: u64,
    /// Whether the unitriangular matrix with α = 1, β = 0 is an isometry.
    pub naive_a_unitary: bool,
    pub witnesses_unitary: bool,
    pub witnesses_in_m: bool,
    /// Order of the subgroup M, by enumeration.
    pub m_order: usize,
    pub m_closed: bool,
    pub c_central: bool,
    pub ab_commute: bool,
    pub chain_ok: bool,
}

impl UnitaryReport {
    pub fn ok(&self) -> bool {
        self.witnesses_unitary
            && self.witnesses_in_m
            && self.m_order as u64 == self.q.pow(3)
            && self.m_closed
            && self.c_central
            && !self.ab_commute
            && self.chain_ok
    }
}

struct Unitary {
    ctx: FieldCtx,
    q: u64,
    form: Mat3,
}

impl Unitary {
    fn bar(&self, x: &FieldElem) -> FieldElem {
        self.ctx.pow(x, self.q)
    }

    fn trace(&self, x: &FieldElem) -> FieldElem {
        self.ctx.add(x, &self.bar(x))
    }

    /// g J ḡᵀ = J for the antidiagonal form J.
    fn is_isometry(&self, g: &Mat3) -> bool {
        let ctx = &self.ctx;
        let gbar_t = g.map(|x| self.bar(x)).transpose();
        g.mul(ctx, &self.form).mul(ctx, &gbar_t) == self.form
    }

    /// [[1, -ᾱ, β], [0, 1, α], [0, 0, 1]].
    fn element(&self, alpha: &FieldElem, beta: &FieldElem) -> Mat3 {
        let ctx = &self.ctx;
        Mat3::unitriangular(ctx, ctx.neg(&self.bar(alpha)), beta.clone(), alpha.clone())
    }

    fn in_m(&self, g: &Mat3) -> bool {
        let ctx = &self.ctx;
        let alpha = &g.0[1][2];
        let beta = &g.0[0][2];
        *g == self.element(alpha, beta) && ctx.add(&self.trace(beta), &ctx.mul(alpha, &self.bar(alpha))).is_zero()
    }

    /// First β in enumeration order with β + β̄ = t.
    fn with_trace(&self, t: &FieldElem) -> FieldElem {
        self.ctx
            .elements()
            .find(|b| self.trace(b) == *t)
            .expect("trace is surjective")
    }
}

/// The subgroup M of SU(3,q) and its witnesses a, b, c.
///
/// The a used here has α = 1 and β + β̄ = -1.
pub fn unitary_witness(q: u64) -> Result<UnitaryReport> {
    if !(2..=16).contains(&q) {
        return input(format!("q = {q} is outside 2..=16"));
    }
    let ctx = field_of_order(q * q)?;
    let z = ctx.zero();
    let form = Mat3::from_fn(|i, j| if i + j == 2 { ctx.one() } else { z.clone() });
    let u = Unitary {
        ctx: ctx.clone(),
        q,
        form,
    };

    let one = ctx.one();
    let naive_a = u.element(&one, &z);
    let a = u.element(&one, &u.with_trace(&ctx.neg(&one)));
    let w = ctx.multiplicative_generator();
    let delta = u.with_trace(&ctx.neg(&ctx.mul(&w, &u.bar(&w))));
    let b = u.element(&w, &delta);
    let gamma = ctx
        .elements()
        .find(|g| !g.is_zero() && u.trace(g).is_zero())
        .expect("kernel of the trace is nontrivial");
    let c = u.element(&z, &gamma);

    let m: Vec<Mat3> = ctx
        .elements()
        .flat_map(|al| ctx.elements().map(move |be| (al.clone(), be)))
        .map(|(al, be)| u.element(&al, &be))
        .filter(|g| u.in_m(g))
        .collect();
    let members: HashSet<&Mat3> = m.iter().collect();
    let m_closed = m.iter().all(|x| m.iter().all(|y| members.contains(&x.mul(&ctx, y))));

    let wits = [&a, &b, &c];
    Ok(UnitaryReport {
        q,
        naive_a_unitary: u.is_isometry(&naive_a),
        witnesses_unitary: wits.iter().all(|g| u.is_isometry(g)),
        witnesses_in_m: wits.iter().all(|g| u.in_m(g)),
        m_order: m.len(),
        m_closed,
        c_central: m.iter().all(|x| x.commutes(&ctx, &c)) && !c.is_identity(&ctx),
        ab_commute: a.commutes(&ctx, &b),
        chain_ok: chain_is_strict(&ctx, &a, &b, &c),
    })
}
