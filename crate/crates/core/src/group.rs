use std::fmt::Write as _;

use crate::error::{input, Error, Result};
use crate::perm::Perm;

/// A permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    label: Option<String>,
}

impl PermGroup {
    /// Identity generators are dropped; an empty generator list is the trivial group.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        if degree == 0 {
            return input("group degree must be positive");
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            label: None,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> PermGroup {
        self.label = Some(label.into());
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Parses the line-based group format (`degree <n>` then `gen <cycles>` lines, 1-based points).
    pub fn parse(text: &str) -> Result<PermGroup> {
        let mut degree: Option<usize> = None;
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            match degree {
                None => {
                    let n = line
                        .strip_prefix("degree")
                        .filter(|r| r.starts_with(char::is_whitespace))
                        .ok_or_else(|| err("expected `degree <n>`".into()))?
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| err(format!("bad degree: {e}")))?;
                    if n == 0 {
                        return Err(err("degree must be positive".into()));
                    }
                    degree = Some(n);
                }
                Some(n) => {
                    let body = line
                        .strip_prefix("gen")
                        .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
                        .ok_or_else(|| err("expected `gen <cycles>`".into()))?;
                    let p = Perm::parse(n, body).map_err(|e| err(e.to_string()))?;
                    gens.push(p);
                }
            }
        }
        let degree = degree.ok_or(Error::Parse {
            line: 0,
            msg: "missing `degree` line".into(),
        })?;
        PermGroup::new(degree, gens)
    }

    pub fn format(&self) -> String {
        let mut out = String::new();
        if let Some(l) = &self.label {
            let _ = writeln!(out, "# {l}");
        }
        let _ = writeln!(out, "degree {}", self.degree);
        if self.generators.is_empty() {
            let _ = writeln!(out, "gen ()");
        }
        for g in &self.generators {
            let _ = writeln!(out, "gen {g}");
        }
        out
    }
}
