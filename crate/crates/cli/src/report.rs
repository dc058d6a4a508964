use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use ibis_core::analysis::{
    irredundant_spectrum, matroid_axiom_check, matroid_from_ibis, minimal_base_size, IbisVerdict, IrrSequence,
};
use ibis_core::catalog::{self, LISTED};
use ibis_core::ct::{centralizer_abelian_scan, is_ct_centralizer_partition, is_ct_transitivity};
use ibis_core::{is_primitive, Bsgs, Error, PermGroup};

use crate::config::RunConfig;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Catalog(String),
    File(String),
}

impl Source {
    pub fn load(&self, config: &RunConfig) -> Result<(String, PermGroup), Error> {
        match self {
            Source::Catalog(name) => Ok((name.clone(), catalog::resolve(name, &config.limits())?)),
            Source::File(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
                let g = PermGroup::parse(&text)?;
                let name = g
                    .label()
                    .map(str::to_owned)
                    .unwrap_or_else(|| Path::new(path).display().to_string());
                Ok((name, g))
            }
        }
    }
}

fn one_based(points: &[usize]) -> Vec<usize> {
    points.iter().map(|p| p + 1).collect()
}

/// The axiom check makes a quadratic number of closure calls per flat.
pub const AXIOM_CHECK_DEGREE: usize = 40;

#[derive(Clone, Debug, Serialize)]
pub struct MatroidSummary {
    pub rank: usize,
    pub ground_size: usize,
    /// Omitted above the flat-enumeration cap; `axioms_hold` also above `AXIOM_CHECK_DEGREE`.
    pub flats_per_rank: Option<Vec<usize>>,
    pub axioms_hold: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub group: String,
    pub degree: usize,
    pub order: String,
    pub primitive: bool,
    pub base_size: Option<usize>,
    pub spectrum: Vec<usize>,
    pub ibis: Option<bool>,
    pub witnesses: BTreeMap<usize, Vec<usize>>,
    pub capped: bool,
    pub elapsed_ms: u64,
    pub nodes: u64,
    pub matroid: Option<MatroidSummary>,
}

pub fn analyze(source: &Source, config: &RunConfig) -> Result<AnalyzeReport, Error> {
    let start = Instant::now();
    let (name, g) = source.load(config)?;
    let b = Bsgs::new(&g);
    let caps = config.caps();
    let spectrum = irredundant_spectrum(&b, &caps);
    let mut capped = spectrum.incomplete;
    let ibis = match (spectrum.sizes.len(), spectrum.incomplete) {
        (n, _) if n > 1 => Some(false),
        (_, true) => None,
        _ => Some(true),
    };
    let base_size = match minimal_base_size(&b, &caps) {
        Ok(w) => Some(w.len()),
        Err(Error::Capacity { .. }) => {
            capped = true;
            None
        }
        Err(e) => return Err(e),
    };
    let matroid = match (ibis, base_size) {
        (Some(true), Some(rank)) => {
            let verdict = IbisVerdict {
                is_ibis: Some(true),
                base_size: Some(rank),
                counterexample: None,
                sizes_seen: spectrum.sizes.clone(),
                node_count: spectrum.node_count,
            };
            let m = matroid_from_ibis(&b, &verdict)?;
            let flats = m.flats_by_rank();
            Some(MatroidSummary {
                rank: m.rank(),
                ground_size: m.ground_size(),
                flats_per_rank: flats.as_ref().map(|f| f.iter().map(Vec::len).collect()),
                axioms_hold: (flats.is_some() && m.ground_size() <= AXIOM_CHECK_DEGREE)
                    .then(|| matroid_axiom_check(&m).ok()),
            })
        }
        _ => None,
    };
    Ok(AnalyzeReport {
        group: name,
        degree: g.degree(),
        order: b.order().to_string(),
        primitive: is_primitive(&g)?,
        base_size,
        spectrum: spectrum.sizes.clone(),
        ibis,
        witnesses: spectrum
            .witnesses
            .iter()
            .map(|(&s, w): (&usize, &IrrSequence)| (s, one_based(&w.points)))
            .collect(),
        capped,
        elapsed_ms: start.elapsed().as_millis() as u64,
        nodes: spectrum.node_count,
        matroid,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub a: String,
    pub t: String,
    pub b: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CtReport {
    pub group: String,
    pub degree: usize,
    pub order: String,
    pub ct: bool,
    pub methods_agree: bool,
    pub abelian_centralizers: bool,
    pub violation: Option<Violation>,
    pub elapsed_ms: u64,
}

pub fn ct(source: &Source, config: &RunConfig) -> Result<CtReport, Error> {
    let start = Instant::now();
    let (name, g) = source.load(config)?;
    let b = Bsgs::new(&g);
    let t = is_ct_transitivity(&b, config.ct_cap)?;
    let p = is_ct_centralizer_partition(&b, config.ct_cap)?;
    let abelian = centralizer_abelian_scan(&b, config.ct_cap)?;
    Ok(CtReport {
        group: name,
        degree: g.degree(),
        order: b.order().to_string(),
        ct: t.is_ct,
        methods_agree: t.method_agreement && p.method_agreement && t.is_ct == p.is_ct,
        abelian_centralizers: abelian,
        violation: t.violation.map(|(a, t, b)| Violation {
            a: a.to_string(),
            t: t.to_string(),
            b: b.to_string(),
        }),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogLine {
    pub name: &'static str,
    pub degree: String,
    pub order: String,
    pub expected: Option<String>,
}

pub fn catalog_listing() -> Vec<CatalogLine> {
    LISTED
        .iter()
        .map(|&name| {
            let e = catalog::expected(name).expect("listed names parse");
            CatalogLine {
                name,
                degree: e.degree.to_string(),
                order: e.order.to_string(),
                expected: e.claim.map(|c| c.to_string()),
            }
        })
        .collect()
}

pub fn catalog_text(lines: &[CatalogLine]) -> String {
    let w = lines.iter().map(|l| l.name.len()).max().unwrap_or(0);
    let dw = lines.iter().map(|l| l.degree.len()).max().unwrap_or(0);
    let ow = lines.iter().map(|l| l.order.len()).max().unwrap_or(0);
    let mut out = format!("{:w$}  {:>dw$}  {:>ow$}  expected\n", "name", "degree", "order");
    for l in lines {
        let exp = l.expected.as_deref().unwrap_or("-");
        out.push_str(&format!("{:w$}  {:>dw$}  {:>ow$}  {exp}\n", l.name, l.degree, l.order));
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// `key: value` lines; nested objects become dotted keys.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    go(&key, x, out);
                }
            }
            other => out.push((prefix.to_owned(), scalar(other))),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

pub fn to_text<T: Serialize>(report: &T) -> String {
    let v = serde_json::to_value(report).expect("reports serialize");
    flatten(&v)
        .into_iter()
        .map(|(k, x)| format!("{k}: {x}").trim_end().to_owned() + "\n")
        .collect()
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
}
