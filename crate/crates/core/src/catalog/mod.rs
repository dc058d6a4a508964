//! Named groups and actions.

pub mod classical;
pub mod diagonal;

use std::fmt;

use num_bigint::BigUint;

use crate::actions::{symmetric_generators, Limits};
use crate::error::{input, Error, Result};
use crate::group::PermGroup;
use crate::perm::{gcd, Perm};

pub use classical::{
    action_on_m_subsets, agl, alt7_on_15, alt_natural, frobenius_agl1, mobius, pgl2, psl2, psl2_frobenius,
    psl2_on_dihedral_cosets, psl3_2_on_7, sym6_on_triple_partitions, sym_natural, Mat2,
};
pub use diagonal::{diagonal_group, product_action_group, DiagonalGroup, DiagonalSpec};

/// What the literature says about a catalog group's bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    Ibis { base_size: Option<usize> },
    NotIbis,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Ibis { base_size: Some(b) } => write!(f, "IBIS, b={b}"),
            Claim::Ibis { base_size: None } => write!(f, "IBIS"),
            Claim::NotIbis => write!(f, "not IBIS"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub degree: u128,
    pub order: BigUint,
    pub primitive: bool,
    pub claim: Option<Claim>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: PermGroup,
    pub expected: Expected,
    /// Present for `diag:` entries.
    pub diagonal: Option<DiagonalGroup>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Top {
    Trivial,
    Cyclic,
    Alternating,
    Symmetric,
}

impl Top {
    pub fn group(self, k: usize) -> PermGroup {
        let gens = match self {
            Top::Trivial => Vec::new(),
            Top::Symmetric => symmetric_generators(k),
            Top::Cyclic if k >= 2 => {
                let c: Vec<usize> = (0..k).collect();
                vec![Perm::from_cycles(k, &[&c]).expect("valid")]
            }
            Top::Alternating if k >= 3 => alt_natural(k).expect("k >= 3").generators().to_vec(),
            _ => Vec::new(),
        };
        PermGroup::new(k, gens).expect("valid")
    }

    fn order(self, k: usize) -> BigUint {
        match self {
            Top::Trivial => BigUint::from(1u32),
            Top::Cyclic => BigUint::from(k.max(1)),
            Top::Symmetric => factorial(k),
            Top::Alternating if k >= 3 => factorial(k) / 2u32,
            Top::Alternating => BigUint::from(1u32),
        }
    }

    fn primitive_on(self, k: usize) -> bool {
        match self {
            Top::Trivial => k <= 1,
            Top::Symmetric => true,
            Top::Alternating => k >= 3,
            Top::Cyclic => (2..k).all(|d| !k.is_multiple_of(d)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Source {
    Sym(usize),
    Alt(usize),
    SymSets(usize, usize),
    AltSets(usize, usize),
    Sym6Partitions,
    Agl(usize, u32),
    Psl2(u64),
    Pgl2(u64),
    Psl2Dihedral(u64),
    Psl32,
    Alt7On15,
    Diag {
        t: Box<Source>,
        k: usize,
        top: Top,
        frob: Option<u32>,
        twist: bool,
        outer: bool,
    },
    Prod {
        h: Box<Source>,
        k: usize,
    },
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

fn binomial(n: usize, m: usize) -> u128 {
    (0..m).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Input(format!("bad {what} `{s}` in catalog name")))
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut f = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

fn parse(name: &str) -> Result<Source> {
    let segs: Vec<&str> = name.split(':').collect();
    let unknown = || Error::Input(format!("unknown catalog name `{name}`"));
    let src = match segs.as_slice() {
        ["sym", n] => Source::Sym(num(n, "degree")?),
        ["alt", n] => Source::Alt(num(n, "degree")?),
        ["sym", n, "sets", m] => Source::SymSets(num(n, "degree")?, num(m, "subset size")?),
        ["alt", n, "sets", m] => Source::AltSets(num(n, "degree")?, num(m, "subset size")?),
        ["sym6", "partitions"] => Source::Sym6Partitions,
        ["agl", d, p] => Source::Agl(num(d, "dimension")?, num(p, "prime")?),
        ["psl2", q] => Source::Psl2(num(q, "field order")?),
        ["pgl2", q] => Source::Pgl2(num(q, "field order")?),
        ["psl2", q, "dihedral"] => Source::Psl2Dihedral(num(q, "field order")?),
        ["psl3_2", "7"] => Source::Psl32,
        ["alt7", "15"] => Source::Alt7On15,
        ["diag", rest @ ..] => parse_diag(rest).map_err(|e| match e {
            Error::Input(msg) => Error::Input(format!("{msg} (in `{name}`)")),
            other => other,
        })?,
        ["prod", rest @ .., k] if !rest.is_empty() => Source::Prod {
            h: Box::new(parse(&rest.join(":"))?),
            k: num(k, "power")?,
        },
        _ => return Err(unknown()),
    };
    Ok(src)
}

fn parse_diag(segs: &[&str]) -> Result<Source> {
    let mut end = segs.len();
    while end > 0 && (segs[end - 1].contains('=') || matches!(segs[end - 1], "twist" | "outer")) {
        end -= 1;
    }
    if end < 2 {
        return input("diag needs `diag:<T>:<k>`");
    }
    let (mut top, mut frob, mut twist, mut outer) = (Top::Trivial, None, false, false);
    for opt in &segs[end..] {
        match opt.split_once('=') {
            Some(("top", v)) => {
                top = match v {
                    "sym" => Top::Symmetric,
                    "alt" => Top::Alternating,
                    "cyc" => Top::Cyclic,
                    "trivial" => Top::Trivial,
                    _ => return input(format!("unknown top group `{v}`")),
                }
            }
            Some(("frob", v)) => frob = Some(num(v, "Frobenius power")?),
            None if *opt == "twist" => twist = true,
            None if *opt == "outer" => outer = true,
            _ => return input(format!("unknown diag option `{opt}`")),
        }
    }
    let t = parse(&segs[..end - 1].join(":"))?;
    let k: usize = num(segs[end - 1], "power")?;
    match (&t, frob.is_some() || twist, outer) {
        (Source::Alt(n), false, _) if *n >= 5 => {}
        (Source::Alt(n), true, false) if *n >= 5 && frob.is_none() => {}
        (Source::Psl2(q), _, false) => {
            if (frob.is_some() || twist) && !(q.is_power_of_two() || *q == 9) {
                return input("Frobenius automorphisms are available for q = 2^f or 9");
            }
        }
        (Source::Psl32, false, false) => {}
        _ => return input("unsupported socle factor or option combination"),
    }
    if twist && (k != 2 || top != Top::Trivial) {
        return input("`twist` needs k = 2 and no top option");
    }
    Ok(Source::Diag {
        t: Box::new(t),
        k,
        top,
        frob,
        twist,
        outer,
    })
}

impl Source {
    fn expected(&self) -> Result<Expected> {
        let ibis = |b: Option<usize>| Some(Claim::Ibis { base_size: b });
        let e = match *self {
            Source::Sym(n) => Expected {
                degree: n as u128,
                order: factorial(n),
                primitive: true,
                claim: ibis(Some(n.saturating_sub(1))),
            },
            Source::Alt(n) => Expected {
                degree: n as u128,
                order: factorial(n) / 2u32,
                primitive: true,
                claim: ibis(Some(n.saturating_sub(2))),
            },
            Source::SymSets(n, m) | Source::AltSets(n, m) => {
                let alt = matches!(self, Source::AltSets(..));
                Expected {
                    degree: binomial(n, m),
                    order: if alt { factorial(n) / 2u32 } else { factorial(n) },
                    primitive: 2 * m != n,
                    claim: (n == 6 && m == 2).then_some(Claim::Ibis { base_size: None }),
                }
            }
            Source::Sym6Partitions => Expected {
                degree: 10,
                order: factorial(6),
                primitive: true,
                claim: ibis(None),
            },
            Source::Agl(d, p) => Expected {
                degree: (p as u128).pow(d as u32),
                order: BigUint::from(p).pow(d as u32) * classical::gl_order(d as u32, p as u64),
                primitive: true,
                claim: ibis(Some(d + 1)),
            },
            Source::Psl2(q) | Source::Pgl2(q) => Expected {
                degree: q as u128 + 1,
                order: if matches!(self, Source::Psl2(_)) {
                    BigUint::from(classical::psl2_order(q))
                } else {
                    BigUint::from(q * (q * q - 1))
                },
                primitive: true,
                claim: ibis(None),
            },
            Source::Psl2Dihedral(q) => Expected {
                degree: (q * (q - 1) / 2) as u128,
                order: BigUint::from(classical::psl2_order(q)),
                primitive: true,
                claim: ibis(None),
            },
            Source::Psl32 => Expected {
                degree: 7,
                order: BigUint::from(168u32),
                primitive: true,
                claim: ibis(None),
            },
            Source::Alt7On15 => Expected {
                degree: 15,
                order: BigUint::from(2520u32),
                primitive: true,
                claim: ibis(None),
            },
            Source::Diag {
                ref t,
                k,
                top,
                frob,
                twist,
                outer,
            } => {
                let te = t.expected()?;
                let mut extra = BigUint::from(1u32);
                if let (Some(i), Source::Psl2(q)) = (frob, t.as_ref()) {
                    let (_, f) = prime_power(*q).expect("validated");
                    extra *= f / gcd(f as u64, i as u64) as u32;
                }
                if outer {
                    extra *= 2u32;
                }
                let plain = extra == BigUint::from(1u32);
                if twist {
                    extra *= 2u32;
                }
                let primitive = top.primitive_on(k) || (k == 2 && (top == Top::Trivial || twist));
                let even_psl2 = match t.as_ref() {
                    Source::Psl2(q) => q % 2 == 0,
                    Source::Alt(5) => true,
                    _ => te.order == BigUint::from(60u32),
                };
                let claim = if !primitive {
                    None
                } else if k == 2 && top == Top::Trivial && !twist && plain && even_psl2 {
                    ibis(Some(3))
                } else {
                    Some(Claim::NotIbis)
                };
                Expected {
                    degree: te.order.to_u128_checked()?.pow(k as u32 - 1),
                    order: te.order.pow(k as u32) * top.order(k) * extra,
                    primitive,
                    claim,
                }
            }
            Source::Prod { ref h, k } => {
                let he = h.expected()?;
                Expected {
                    degree: he.degree.pow(k as u32),
                    order: he.order.pow(k as u32) * factorial(k),
                    primitive: true,
                    claim: (k >= 2).then_some(Claim::NotIbis),
                }
            }
        };
        Ok(e)
    }

    fn build(&self, limits: &Limits) -> Result<(PermGroup, Option<DiagonalGroup>)> {
        let g = match *self {
            Source::Sym(n) => sym_natural(n)?,
            Source::Alt(n) => alt_natural(n)?,
            Source::SymSets(n, m) => action_on_m_subsets(&sym_natural(n)?, m, limits)?,
            Source::AltSets(n, m) => action_on_m_subsets(&alt_natural(n)?, m, limits)?,
            Source::Sym6Partitions => sym6_on_triple_partitions(),
            Source::Agl(d, p) => agl(d, p, limits)?,
            Source::Psl2(q) => psl2(q)?,
            Source::Pgl2(q) => pgl2(q)?,
            Source::Psl2Dihedral(q) => psl2_on_dihedral_cosets(q, limits)?,
            Source::Psl32 => psl3_2_on_7(),
            Source::Alt7On15 => alt7_on_15(limits)?,
            Source::Diag {
                ref t,
                k,
                top,
                frob,
                twist,
                outer,
            } => {
                let (tg, _) = t.build(limits)?;
                let mut spec = DiagonalSpec::new(tg.clone(), k);
                spec.top = top.group(k);
                let twist_elem = match t.as_ref() {
                    Source::Psl2(q) => {
                        if let Some(i) = frob {
                            spec.outer.push(psl2_frobenius(*q)?.pow(i as u64));
                        }
                        if twist {
                            Some(psl2_frobenius(*q)?)
                        } else {
                            None
                        }
                    }
                    Source::Alt(n) => {
                        let tr = Perm::from_cycles(*n, &[&[0, 1]])?;
                        if outer {
                            spec.outer.push(tr.clone());
                        }
                        twist.then_some(tr)
                    }
                    _ => None,
                };
                spec.twist = twist_elem;
                let d = diagonal_group(&spec, limits)?;
                return Ok((d.group.clone(), Some(d)));
            }
            Source::Prod { ref h, k } => {
                let (hg, _) = h.build(limits)?;
                product_action_group(&hg, k, &Top::Symmetric.group(k), limits)?
            }
        };
        Ok((g, None))
    }
}

trait ToU128 {
    fn to_u128_checked(&self) -> Result<u128>;
}

impl ToU128 for BigUint {
    fn to_u128_checked(&self) -> Result<u128> {
        num_traits::ToPrimitive::to_u128(self).ok_or_else(|| Error::Capacity {
            what: "degree",
            cap: u64::MAX,
            needed: self.to_string(),
        })
    }
}

/// Degree, order and literature claim of a catalog name, without building the group.
pub fn expected(name: &str) -> Result<Expected> {
    parse(name)?.expected()
}

/// Builds the group named `name`.
pub fn entry(name: &str, limits: &Limits) -> Result<CatalogEntry> {
    let src = parse(name)?;
    let expected = src.expected()?;
    limits.check_degree(expected.degree)?;
    let (group, diagonal) = src.build(limits)?;
    Ok(CatalogEntry {
        name: name.to_string(),
        group: group.with_label(name),
        expected,
        diagonal,
    })
}

pub fn resolve(name: &str, limits: &Limits) -> Result<PermGroup> {
    Ok(entry(name, limits)?.group)
}

/// The concrete names listed by the catalog command, in display order.
pub const LISTED: &[&str] = &[
    "sym:4",
    "sym:5",
    "sym:6",
    "sym:7",
    "sym:8",
    "alt:4",
    "alt:5",
    "alt:6",
    "alt:7",
    "alt:8",
    "sym:6:sets:2",
    "alt:6:sets:2",
    "sym:6:sets:3",
    "sym6:partitions",
    "agl:1:3",
    "agl:1:5",
    "agl:1:7",
    "agl:1:11",
    "agl:2:3",
    "psl2:4",
    "psl2:5",
    "psl2:7",
    "psl2:8",
    "psl2:9",
    "psl2:11",
    "psl2:13",
    "pgl2:4",
    "pgl2:5",
    "pgl2:7",
    "pgl2:8",
    "pgl2:9",
    "psl2:4:dihedral",
    "psl2:8:dihedral",
    "psl3_2:7",
    "alt7:15",
    "diag:psl2:4:2",
    "diag:psl2:8:2",
    "diag:psl2:4:2:frob=1",
    "diag:psl2:7:2",
    "diag:alt:5:2:twist",
    "diag:alt:5:2:top=sym",
    "diag:alt:5:2:top=sym:outer",
    "diag:psl2:8:2:top=sym",
    "diag:alt:7:2:top=sym",
    "diag:alt:5:3:top=sym",
    "prod:sym:5:2",
    "prod:psl2:4:2",
];
