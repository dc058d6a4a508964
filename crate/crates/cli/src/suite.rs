//! The claim ledger run by `ibis verify`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use ibis_core::analysis::matrix::{heisenberg_witness, unitary_witness};
use ibis_core::analysis::{
    irredundant_spectrum, is_ibis, is_irredundant, matroid_axiom_check, matroid_from_ibis, minimal_base_size,
    product_type_bases, verify_witness_not_base, IbisVerdict,
};
use ibis_core::catalog::{self, alt_natural, psl2, psl3_2_on_7, DiagonalGroup};
use ibis_core::ct::{
    centralizer_abelian_scan, dihedral_trivial_intersection_witness, is_ct_centralizer_partition, is_ct_transitivity,
};
use ibis_core::{Bsgs, Error, Perm, PermGroup};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Small,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub id: &'static str,
    pub topic: &'static str,
    pub expected: &'static str,
    pub observed: String,
    pub status: Status,
    pub reason: Option<String>,
    /// Skipped because a search cap was reached, as opposed to out of scope.
    pub capped: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub claims: Vec<ClaimRecord>,
}

impl SuiteResult {
    pub fn failed(&self) -> usize {
        self.claims.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn capped(&self) -> usize {
        self.claims.iter().filter(|c| c.capped).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() > 0 {
            1
        } else if self.capped() > 0 {
            2
        } else {
            0
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(out, "{:>3}  {status}  {:>7} ms  {}", c.id, c.elapsed_ms, c.topic);
            let _ = writeln!(out, "          expected: {}", c.expected);
            let _ = writeln!(out, "          observed: {}", c.observed);
            if let Some(r) = &c.reason {
                let _ = writeln!(out, "          reason:   {r}");
            }
        }
        let pass = self.claims.iter().filter(|c| c.status == Status::Pass).count();
        let _ = writeln!(
            out,
            "{pass} passed, {} failed, {} skipped",
            self.failed(),
            self.claims.len() - pass - self.failed()
        );
        out
    }
}

/// Accumulates sub-checks of one claim.
#[derive(Default)]
struct Tally {
    notes: Vec<String>,
    failures: Vec<String>,
    capped: Vec<String>,
    deferred: Vec<&'static str>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn error(&mut self, what: &str, e: Error) {
        match e {
            Error::Capacity { .. } => self.capped.push(format!("{what}: {e}")),
            e => self.failures.push(format!("{what}: {e}")),
        }
    }

    fn verdict(&mut self, name: &str, b: &Bsgs, config: &RunConfig) -> Option<IbisVerdict> {
        match is_ibis(b, &config.caps()) {
            Ok(v) if v.is_ibis.is_none() => {
                self.capped
                    .push(format!("{name}: search cap reached after {} nodes", v.node_count));
                None
            }
            Ok(v) => Some(v),
            Err(e) => {
                self.error(name, e);
                None
            }
        }
    }

    fn record(self, id: &'static str, topic: &'static str, expected: &'static str, ms: u64) -> ClaimRecord {
        let mut observed = if !self.failures.is_empty() {
            self.failures.join("; ")
        } else {
            self.notes.join("; ")
        };
        if !self.deferred.is_empty() {
            let _ = write!(observed, " [full suite only: {}]", self.deferred.join(", "));
        }
        let (status, reason, capped) = if !self.failures.is_empty() {
            (Status::Fail, None, false)
        } else if !self.capped.is_empty() {
            (Status::Skipped, Some(self.capped.join("; ")), true)
        } else {
            (Status::Pass, None, false)
        };
        ClaimRecord {
            id,
            topic,
            expected,
            observed,
            status,
            reason,
            capped,
            elapsed_ms: ms,
        }
    }
}

fn entry(t: &mut Tally, name: &str, config: &RunConfig) -> Option<(Bsgs, Option<DiagonalGroup>)> {
    match catalog::entry(name, &config.limits()) {
        Ok(e) => Some((Bsgs::new(&e.group), e.diagonal)),
        Err(e) => {
            t.error(name, e);
            None
        }
    }
}

fn zoo() -> Vec<String> {
    let mut names: Vec<String> = vec!["sym:6:sets:2".into(), "sym6:partitions".into()];
    for q in [4, 5, 7, 8, 9] {
        names.push(format!("psl2:{q}"));
        names.push(format!("pgl2:{q}"));
    }
    names.extend(["psl2:4:dihedral", "psl2:8:dihedral", "psl3_2:7", "alt7:15"].map(String::from));
    for p in [3, 5, 7, 11] {
        names.push(format!("agl:1:{p}"));
    }
    names.push("agl:2:3".into());
    names
}

fn claim_zoo(t: &mut Tally, suite: Suite, config: &RunConfig) {
    for name in zoo() {
        if name == "alt7:15" && suite == Suite::Small {
            t.deferred.push("alt7:15");
            continue;
        }
        let Some((b, _)) = entry(t, &name, config) else {
            continue;
        };
        let Some(v) = t.verdict(&name, &b, config) else {
            continue;
        };
        let b_ok = match name.strip_prefix("agl:") {
            Some(rest) => {
                let d: usize = rest.split(':').next().and_then(|d| d.parse().ok()).expect("agl:d:p");
                v.base_size == Some(d + 1)
            }
            None => true,
        };
        t.check(
            v.is_ibis == Some(true) && b_ok,
            format!("{name} IBIS b={}", v.base_size.unwrap_or(0)),
        );
    }
}

fn claim_natural(t: &mut Tally, config: &RunConfig) {
    for n in 4..=8 {
        for (kind, want) in [("sym", n - 1), ("alt", n - 2)] {
            let name = format!("{kind}:{n}");
            let Some((b, _)) = entry(t, &name, config) else {
                continue;
            };
            let s = irredundant_spectrum(&b, &config.caps());
            if s.incomplete {
                t.capped.push(format!("{name}: spectrum incomplete"));
                continue;
            }
            t.check(s.sizes == [want], format!("{name} spectrum {:?}", s.sizes));
        }
    }
}

/// Full spectrum of a group the early-exit verdict found not IBIS; both must agree.
fn full_spectrum(t: &mut Tally, name: &str, b: &Bsgs, v: &IbisVerdict, config: &RunConfig) -> Option<Vec<usize>> {
    let s = irredundant_spectrum(b, &config.caps());
    if s.incomplete {
        t.capped
            .push(format!("{name}: spectrum incomplete after {} nodes", s.node_count));
        return None;
    }
    let seen = v.counterexample.iter().flat_map(|(x, y)| [x.len(), y.len()]);
    let consistent = s.sizes.len() >= 2 && seen.into_iter().all(|n| s.sizes.contains(&n));
    if !consistent {
        t.check(
            false,
            format!("{name}: spectrum {:?} disagrees with the verdict", s.sizes),
        );
        return None;
    }
    Some(s.sizes)
}

fn expect_ibis(t: &mut Tally, name: &str, want_ibis: bool, want_b: Option<usize>, config: &RunConfig) {
    let Some((b, _)) = entry(t, name, config) else { return };
    let Some(v) = t.verdict(name, &b, config) else { return };
    if want_ibis {
        let b_ok = want_b.is_none() || v.base_size == want_b;
        t.check(
            v.is_ibis == Some(true) && b_ok,
            format!("{name} IBIS b={}", v.base_size.unwrap_or(0)),
        );
        return;
    }
    if v.is_ibis != Some(false) {
        t.check(false, format!("{name} IBIS b={}", v.base_size.unwrap_or(0)));
        return;
    }
    if let Some(sizes) = full_spectrum(t, name, &b, &v, config) {
        t.check(true, format!("{name} not IBIS, spectrum {sizes:?}"));
    }
}

fn claim_positive_diagonal(t: &mut Tally, suite: Suite, config: &RunConfig) {
    expect_ibis(t, "diag:psl2:4:2", true, Some(3), config);
    if suite == Suite::Full {
        expect_ibis(t, "diag:psl2:8:2", true, Some(3), config);
    } else {
        t.deferred.push("diag:psl2:8:2");
    }
}

fn shown_pair(pair: Option<(usize, usize)>) -> String {
    pair.map_or("none".into(), |(x, y)| format!("{x} and {y}"))
}

fn claim_non_monolithic(t: &mut Tally, config: &RunConfig) {
    for name in ["diag:psl2:4:2:frob=1", "diag:psl2:7:2"] {
        let Some((b, _)) = entry(t, name, config) else { continue };
        let Some(v) = t.verdict(name, &b, config) else { continue };
        let pair = v.counterexample.as_ref().map(|(x, y)| (x.len(), y.len()));
        let ok = v.is_ibis == Some(false)
            && match pair {
                Some((x, y)) => x.min(y) == 3 && x.max(y) >= 4,
                None => false,
            };
        if !ok {
            t.check(
                false,
                format!(
                    "{name}: verdict {:?}, counterexample sizes {}",
                    v.is_ibis,
                    shown_pair(pair)
                ),
            );
            continue;
        }
        if let Some(sizes) = full_spectrum(t, name, &b, &v, config) {
            t.check(
                sizes[0] == 3,
                format!(
                    "{name} not IBIS, counterexample sizes {}, spectrum {sizes:?}",
                    shown_pair(pair)
                ),
            );
        }
    }
}

/// Points [1,1], [1,t_1], … of a two-coordinate diagonal action.
fn diagonal_points(d: &DiagonalGroup, degree: usize, ts: &[&str]) -> Result<Vec<usize>, Error> {
    let mut out = vec![d.point(&[Perm::identity(degree)])?];
    for s in ts {
        out.push(d.point(&[Perm::parse(degree, s)?])?);
    }
    Ok(out)
}

/// Explicit sequences on a diagonal group: (catalog name, socle degree, elements, is a base).
const DIAGONAL_WITNESSES: &[(&str, usize, &[&str], bool)] = &[
    ("diag:alt:5:2:twist", 5, &["(1 2 3)", "(1 2 3 4 5)"], true),
    ("diag:alt:5:2:twist", 5, &["(1 2 3)", "(1 2 4)"], false),
    ("diag:alt:5:2:top=sym", 5, &["(1 2 3)", "(1 2)(3 4)"], true),
    ("diag:alt:5:2:top=sym", 5, &["(1 2 3)", "(1 2)(4 5)"], false),
    (
        "diag:alt:5:2:top=sym:outer",
        5,
        &["(3 4 5)", "(1 2)(3 4)", "(1 2)(4 5)"],
        false,
    ),
    ("diag:alt:7:2:top=sym", 7, &["(1 2 3)", "(1 2 4)", "(1 2 5)"], false),
];

fn claim_monolithic(t: &mut Tally, suite: Suite, config: &RunConfig) {
    let names = [
        ("diag:alt:5:2:twist", false),
        ("diag:alt:5:2:top=sym", false),
        ("diag:alt:5:2:top=sym:outer", false),
        ("diag:psl2:8:2:top=sym", false),
        ("diag:alt:7:2:top=sym", true),
        ("diag:alt:5:3:top=sym", true),
    ];
    for (name, full_only) in names {
        if full_only && suite == Suite::Small {
            t.deferred.push(name);
            continue;
        }
        expect_ibis(t, name, false, None, config);
    }
    for &(name, degree, elems, is_base) in DIAGONAL_WITNESSES {
        if name.contains("alt:7") && suite == Suite::Small {
            continue;
        }
        let Some((b, Some(d))) = entry(t, name, config) else {
            continue;
        };
        match diagonal_points(&d, degree, elems) {
            Ok(seq) => {
                let ok = if is_base {
                    is_irredundant(&b, &seq).is_ok_and(|s| s.is_base())
                } else {
                    verify_witness_not_base(&b, &seq)
                };
                let kind = if is_base {
                    "irredundant base"
                } else {
                    "irredundant non-base"
                };
                t.check(ok, format!("{name} [1,1],[1,{}] {kind}", elems.join("],[1,")));
            }
            Err(e) => t.error(name, e),
        }
    }
}

type NamedGroup = (&'static str, fn() -> PermGroup);

fn claim_product(t: &mut Tally, config: &RunConfig) {
    let factors: [NamedGroup; 2] = [
        ("prod:sym:5:2", || alt_natural(5).expect("A5")),
        ("prod:psl2:4:2", || psl2(4).expect("PSL(2,4)")),
    ];
    for (name, factor) in factors {
        expect_ibis(t, name, false, None, config);
        let Some((b, _)) = entry(t, name, config) else { continue };
        match product_type_bases(&b, &Bsgs::new(&factor()), 2) {
            Ok(pb) => {
                let r = pb.factor_base.len() - 1;
                let short = is_irredundant(&b, &pb.short.points[..r + 1]).is_ok();
                let long = is_irredundant(&b, &pb.long.points[..1 + 2 * r]).is_ok();
                t.check(
                    short && long && pb.short.is_base() && pb.long.is_base() && pb.short.len() != pb.long.len(),
                    format!(
                        "{name} r={r}: prefixes {} and {}, completed bases {} and {}",
                        r + 1,
                        1 + 2 * r,
                        pb.short.len(),
                        pb.long.len()
                    ),
                );
            }
            Err(e) => t.error(name, e),
        }
    }
}

fn claim_ct(t: &mut Tally, config: &RunConfig) {
    let corpus: [NamedGroup; 7] = [
        ("Alt(5)", || alt_natural(5).expect("A5")),
        ("PSL(2,7)", psl3_2_on_7),
        ("Alt(6)", || alt_natural(6).expect("A6")),
        ("PSL(2,8)", || psl2(8).expect("PSL(2,8)")),
        ("PSL(2,11)", || psl2(11).expect("PSL(2,11)")),
        ("PSL(2,13)", || psl2(13).expect("PSL(2,13)")),
        ("Alt(7)", || alt_natural(7).expect("A7")),
    ];
    let mut ct = Vec::new();
    for (name, g) in corpus {
        let b = Bsgs::new(&g());
        let run = || -> Result<(bool, bool), Error> {
            let a = is_ct_transitivity(&b, config.ct_cap)?;
            let p = is_ct_centralizer_partition(&b, config.ct_cap)?;
            let s = centralizer_abelian_scan(&b, config.ct_cap)?;
            Ok((
                a.is_ct,
                a.is_ct == p.is_ct && a.method_agreement && p.method_agreement && s == a.is_ct,
            ))
        };
        match run() {
            Ok((is_ct, agree)) => {
                t.check(agree, format!("{name} methods agree"));
                if is_ct {
                    ct.push(name);
                }
            }
            Err(e) => t.error(name, e),
        }
    }
    t.check(ct == ["Alt(5)", "PSL(2,8)"], format!("CT: {}", ct.join(", ")));
}

fn claim_dihedral(t: &mut Tally) {
    for q in [8, 16] {
        match dihedral_trivial_intersection_witness(q) {
            Ok(d) => t.check(
                d.orders == (2 * (q - 1), 2 * (q - 1)) && d.intersection_order == 1 && d.maximal,
                format!("q={q}: orders {:?}, intersection {}", d.orders, d.intersection_order),
            ),
            Err(e) => t.error(&format!("q={q}"), e),
        }
    }
}

/// Transitive groups of degree at most 8, as generator lists.
const SMALL_TRANSITIVE: &[(usize, &[&str])] = &[
    (3, &["(1 2 3)"]),
    (3, &["(1 2 3)", "(1 2)"]),
    (4, &["(1 2 3 4)"]),
    (4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
    (4, &["(1 2 3 4)", "(1 3)"]),
    (4, &["(1 2 3)", "(2 3 4)"]),
    (4, &["(1 2 3 4)", "(1 2)"]),
    (5, &["(1 2 3 4 5)"]),
    (5, &["(1 2 3 4 5)", "(2 5)(3 4)"]),
    (5, &["(1 2 3 4 5)", "(2 3 5 4)"]),
    (5, &["(1 2 3)", "(1 2 3 4 5)"]),
    (5, &["(1 2 3 4 5)", "(1 2)"]),
    (6, &["(1 2 3 4 5 6)"]),
    (6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"]),
    (6, &["(1 2 3 4 5)", "(1 6)(2 5)"]),
    (6, &["(1 2 3 4 5)", "(1 6)(2 5)", "(2 3 5 4)"]),
    (6, &["(1 2 3)", "(2 3 4 5 6)"]),
    (7, &["(1 2 3 4 5 6 7)", "(2 7)(3 6)(4 5)"]),
    (7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]),
    (7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 2)(3 6)"]),
    (8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]),
    (8, &["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)"]),
    (8, &["(1 2)(3 4)(5 6)(7 8)", "(2 3 5)(4 7 6)", "(3 4)(7 8)"]),
    (8, &["(1 2 3 4 5 6 7)", "(1 8)(2 7)(3 4)(5 6)"]),
];

/// Every irredundant base length, trying all points at every step.
fn all_sequences_spectrum(degree: usize, elements: Vec<Perm>) -> BTreeSet<usize> {
    fn walk(n: usize, stab: &[Perm], depth: usize, out: &mut BTreeSet<usize>) {
        if stab.len() == 1 {
            out.insert(depth);
            return;
        }
        for p in 0..n {
            if stab.iter().any(|x| !x.fixes(p)) {
                let next: Vec<Perm> = stab.iter().filter(|x| x.fixes(p)).cloned().collect();
                walk(n, &next, depth + 1, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(degree, &elements, 0, &mut out);
    out
}

fn claim_oracle(t: &mut Tally, config: &RunConfig) {
    let mut agreed = 0;
    for &(n, gens) in SMALL_TRANSITIVE {
        let label = format!("<{}>", gens.join(", "));
        let g = match gens.iter().map(|s| Perm::parse(n, s)).collect::<Result<Vec<_>, _>>() {
            Ok(gens) => PermGroup::new(n, gens).expect("degree matches"),
            Err(e) => {
                t.error(&label, e);
                continue;
            }
        };
        let b = Bsgs::new(&g);
        let elements = match b.elements(config.enumeration_cap) {
            Ok(e) => e.collect(),
            Err(e) => {
                t.error(&label, e);
                continue;
            }
        };
        let naive: Vec<usize> = all_sequences_spectrum(n, elements).into_iter().collect();
        let s = irredundant_spectrum(&b, &config.caps());
        let min = minimal_base_size(&b, &config.caps()).map(|w| w.len());
        if s.incomplete || matches!(min, Err(Error::Capacity { .. })) {
            t.capped.push(format!("{label}: search cap reached"));
            continue;
        }
        if s.sizes == naive && min.as_ref().ok() == naive.first() {
            agreed += 1;
        } else {
            t.check(
                false,
                format!("{label}: pruned {:?} vs naive {naive:?}, b {min:?}", s.sizes),
            );
        }
    }
    let compared = SMALL_TRANSITIVE.len() - t.capped.len();
    t.check(agreed == compared, format!("{agreed}/{compared} groups agree"));
}

fn claim_matroid(t: &mut Tally, config: &RunConfig) {
    for name in zoo() {
        let Some((b, _)) = entry(t, &name, config) else {
            continue;
        };
        if b.degree() > 60 {
            continue;
        }
        let Some(v) = t.verdict(&name, &b, config) else {
            continue;
        };
        match matroid_from_ibis(&b, &v) {
            Ok(m) => {
                let report = matroid_axiom_check(&m);
                t.check(
                    report.ok() && Some(m.rank()) == v.base_size,
                    format!("{name} rank {} over {} flats", m.rank(), report.flats_checked),
                );
            }
            Err(e) => t.error(&name, e),
        }
    }
}

fn claim_matrices(t: &mut Tally) {
    for p in [2, 3] {
        match heisenberg_witness(p) {
            Ok(r) => t.check(r.ok(), format!("SL(3,{p}) unitriangular order {}", r.order)),
            Err(e) => t.error(&format!("p={p}"), e),
        }
    }
    match unitary_witness(3) {
        Ok(r) => t.check(
            r.ok() && !r.naive_a_unitary,
            format!(
                "SU(3,3): |M| = {}, c central, a and b commute: {}; a with zero corner entry unitary: {}",
                r.m_order, r.ab_commute, r.naive_a_unitary
            ),
        ),
        Err(e) => t.error("q=3", e),
    }
}

struct Claim {
    id: &'static str,
    topic: &'static str,
    expected: &'static str,
}

const CLAIMS: &[Claim] = &[
    Claim {
        id: "1",
        topic: "example zoo of IBIS groups",
        expected: "every listed group is IBIS; AGL(d,p) has b = d+1",
    },
    Claim {
        id: "2",
        topic: "natural symmetric and alternating groups",
        expected: "spectrum Sym(n) = {n-1}, Alt(n) = {n-2} for 4 <= n <= 8",
    },
    Claim {
        id: "3",
        topic: "diagonal PSL(2,2^f)^2 with trivial top",
        expected: "IBIS with b = 3",
    },
    Claim {
        id: "4",
        topic: "diagonal, non-monolithic or non-CT socle factor",
        expected: "not IBIS, irredundant bases of sizes 3 and at least 4",
    },
    Claim {
        id: "5",
        topic: "monolithic diagonal groups",
        expected: "not IBIS; explicit sequences behave as stated",
    },
    Claim {
        id: "6",
        topic: "product type",
        expected: "not IBIS; irredundant prefixes of sizes r+1 and 1+kr",
    },
    Claim {
        id: "7",
        topic: "CT-groups among small simple groups",
        expected: "exactly Alt(5) and PSL(2,8) are CT; all methods agree",
    },
    Claim {
        id: "8",
        topic: "dihedral subgroups of PSL(2,2^f)",
        expected: "two maximal D_2(q-1) meeting trivially for q = 8, 16",
    },
    Claim {
        id: "9",
        topic: "pruned search against brute force",
        expected: "spectra and b(G) agree on transitive groups of degree <= 8",
    },
    Claim {
        id: "10",
        topic: "matroid of an IBIS group",
        expected: "closure axioms hold and rank = b(G)",
    },
    Claim {
        id: "11",
        topic: "matrix witnesses in SL(3,q) and SU(3,q)",
        expected: "Heisenberg group non-abelian of order p^3; c central, a and b do not commute",
    },
    Claim {
        id: "12a",
        topic: "twisted wreath products",
        expected: "not IBIS",
    },
    Claim {
        id: "12b",
        topic: "diagonal type, k >= 5, top group without Alt(k)",
        expected: "b = 2",
    },
];

const OUT_OF_SCOPE: &[(&str, &str)] = &[
    ("12a", "smallest faithful degree |T|^k is far beyond enumeration scale"),
    ("12b", "no instance small enough to build: the degree is at least 60^4"),
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

pub fn run_claim(id: &str, suite: Suite, config: &RunConfig) -> Option<ClaimRecord> {
    let claim = CLAIMS.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    if let Some((_, reason)) = OUT_OF_SCOPE.iter().find(|(i, _)| *i == id) {
        return Some(ClaimRecord {
            id: claim.id,
            topic: claim.topic,
            expected: claim.expected,
            observed: "not run".into(),
            status: Status::Skipped,
            reason: Some((*reason).into()),
            capped: false,
            elapsed_ms: 0,
        });
    }
    let mut t = Tally::default();
    match id {
        "1" => claim_zoo(&mut t, suite, config),
        "2" => claim_natural(&mut t, config),
        "3" => claim_positive_diagonal(&mut t, suite, config),
        "4" => claim_non_monolithic(&mut t, config),
        "5" => claim_monolithic(&mut t, suite, config),
        "6" => claim_product(&mut t, config),
        "7" => claim_ct(&mut t, config),
        "8" => claim_dihedral(&mut t),
        "9" => claim_oracle(&mut t, config),
        "10" => claim_matroid(&mut t, config),
        "11" => claim_matrices(&mut t),
        _ => unreachable!("every listed claim has a runner"),
    }
    let ms = start.elapsed().as_millis() as u64;
    Some(t.record(claim.id, claim.topic, claim.expected, ms))
}

pub fn run_suite(suite: Suite, config: &RunConfig) -> SuiteResult {
    let claims = CLAIMS
        .iter()
        .map(|c| run_claim(c.id, suite, config).expect("listed"))
        .collect();
    SuiteResult { suite, claims }
}
