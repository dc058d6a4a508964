//! Depth-first searches over irredundant sequences.
//!
//! Children of a node are the smallest points of the nontrivial orbits of the
//! current stabilizer `H`; points in one `H`-orbit give conjugate subtrees.
//! Results are memoized by the fixed-point set of `H`, which determines `H`
//! itself (`H` is the pointwise stabilizer of that set).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::bsgs::Bsgs;
use crate::error::{Error, Result};
use crate::orbits::orbit_partition;

use super::{is_irredundant, IrrSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCaps {
    pub nodes: u64,
    pub time: Duration,
    pub workers: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            nodes: 10_000_000,
            time: Duration::from_secs(300),
            workers: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub sizes: Vec<usize>,
    /// One irredundant base per size, in the order of `sizes`.
    pub witnesses: BTreeMap<usize, IrrSequence>,
    pub node_count: u64,
    /// Set when a cap stopped the search; `sizes` is then a lower approximation.
    pub incomplete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IbisVerdict {
    /// `None` when a cap stopped the search before a decision.
    pub is_ibis: Option<bool>,
    pub base_size: Option<usize>,
    pub counterexample: Option<(IrrSequence, IrrSequence)>,
    /// Sizes seen; equals the spectrum when `is_ibis == Some(true)`.
    pub sizes_seen: Vec<usize>,
    pub node_count: u64,
}

/// Completion lengths below a node, each with the first suffix found in tree order.
type Completions = BTreeMap<usize, Vec<usize>>;

#[derive(Debug)]
enum Stop {
    Capped,
    /// A node with two completion lengths; carries the two full sequences.
    Split(Vec<usize>, Vec<usize>),
    Cancelled,
}

struct Search<'a> {
    caps: &'a SearchCaps,
    start: Instant,
    early_exit: bool,
    memo: HashMap<Vec<u32>, Arc<Completions>>,
    nodes: u64,
    /// Global first witness per size, in tree order.
    found: BTreeMap<usize, Vec<usize>>,
    cancel: Option<(&'a AtomicUsize, usize)>,
}

impl<'a> Search<'a> {
    fn new(caps: &'a SearchCaps, start: Instant, early_exit: bool) -> Search<'a> {
        Search {
            caps,
            start,
            early_exit,
            memo: HashMap::new(),
            nodes: 0,
            found: BTreeMap::new(),
            cancel: None,
        }
    }

    fn record(&mut self, path: &[usize], done: &Completions) {
        for (&s, suffix) in done {
            self.found.entry(path.len() + s).or_insert_with(|| {
                let mut w = path.to_vec();
                w.extend_from_slice(suffix);
                w
            });
        }
    }

    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.caps.nodes {
            return Err(Stop::Capped);
        }
        if self.nodes.is_multiple_of(64) {
            if self.start.elapsed() > self.caps.time {
                return Err(Stop::Capped);
            }
            if let Some((flag, me)) = self.cancel {
                if flag.load(Ordering::Relaxed) < me {
                    return Err(Stop::Cancelled);
                }
            }
        }
        Ok(())
    }

    fn node(&mut self, path: &mut Vec<usize>, h: &Bsgs) -> std::result::Result<Arc<Completions>, Stop> {
        if h.is_trivial() {
            let done: Completions = [(0, Vec::new())].into();
            self.record(path, &done);
            return Ok(Arc::new(done));
        }
        let key: Vec<u32> = h.fixed_points().iter().map(|&p| p as u32).collect();
        if let Some(done) = self.memo.get(&key).cloned() {
            self.record(path, &done);
            return Ok(done);
        }
        self.tick()?;
        let mut done = Completions::new();
        for rep in children(h) {
            let child = h.point_stabilizer(rep);
            path.push(rep);
            let sub = self.node(path, &child);
            path.pop();
            for (&s, suffix) in sub?.iter() {
                done.entry(s + 1).or_insert_with(|| {
                    let mut w = vec![rep];
                    w.extend_from_slice(suffix);
                    w
                });
            }
            if self.early_exit && done.len() >= 2 {
                return Err(self.split(path, &done));
            }
        }
        let done = Arc::new(done);
        self.memo.insert(key, done.clone());
        Ok(done)
    }

    fn split(&self, path: &[usize], done: &Completions) -> Stop {
        let mut it = done.values().map(|suffix| {
            let mut w = path.to_vec();
            w.extend_from_slice(suffix);
            w
        });
        let a = it.next().expect("two sizes");
        let b = it.next().expect("two sizes");
        Stop::Split(a, b)
    }
}

/// Smallest point of each nontrivial orbit, ascending.
fn children(h: &Bsgs) -> Vec<usize> {
    orbit_partition(h.degree(), h.strong_generators(), None)
        .orbits()
        .iter()
        .filter(|o| o.len() > 1)
        .map(|o| o[0])
        .collect()
}

struct Outcome {
    root: std::result::Result<Arc<Completions>, Stop>,
    found: BTreeMap<usize, Vec<usize>>,
    nodes: u64,
}

fn run(b: &Bsgs, caps: &SearchCaps, early_exit: bool) -> Outcome {
    let start = Instant::now();
    if caps.workers <= 1 {
        let mut s = Search::new(caps, start, early_exit);
        let root = s.node(&mut Vec::new(), b);
        return Outcome {
            root,
            found: s.found,
            nodes: s.nodes,
        };
    }
    run_parallel(b, caps, early_exit, start)
}

/// Walks down single-child nodes, then hands each child subtree of the first
/// branching node to its own worker. Merging follows tree order, so sizes and
/// witnesses match the sequential search.
/// One subtree's outcome: completions, witnesses by size, nodes visited.
type Branch = (
    std::result::Result<Arc<Completions>, Stop>,
    BTreeMap<usize, Vec<usize>>,
    u64,
);

fn run_parallel(b: &Bsgs, caps: &SearchCaps, early_exit: bool, start: Instant) -> Outcome {
    let mut path = Vec::new();
    let mut h = b.clone();
    let mut nodes = 0;
    let mut kids = Vec::new();
    while !h.is_trivial() {
        nodes += 1;
        kids = children(&h);
        if kids.len() != 1 {
            break;
        }
        path.push(kids[0]);
        h = h.point_stabilizer(kids[0]);
    }
    if h.is_trivial() {
        let done: Completions = [(path.len(), path.clone())].into();
        return Outcome {
            root: Ok(Arc::new(done.clone())),
            found: done,
            nodes,
        };
    }
    let first_split = AtomicUsize::new(usize::MAX);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(caps.workers)
        .build()
        .expect("thread pool");
    let results: Vec<Branch> = pool.install(|| {
        kids.par_iter()
            .enumerate()
            .map(|(i, &rep)| {
                let mut s = Search::new(caps, start, early_exit);
                s.cancel = Some((&first_split, i));
                let child = h.point_stabilizer(rep);
                let mut p = path.clone();
                p.push(rep);
                let r = s.node(&mut p, &child);
                if matches!(r, Err(Stop::Split(..))) {
                    first_split.fetch_min(i, Ordering::Relaxed);
                }
                (r, s.found, s.nodes)
            })
            .collect()
    });

    let mut found: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut done = Completions::new();
    let mut root: Option<std::result::Result<Arc<Completions>, Stop>> = None;
    for (i, (r, f, n)) in results.into_iter().enumerate() {
        nodes += n;
        for (s, w) in f {
            found.entry(s).or_insert(w);
        }
        match r {
            Ok(sub) => {
                for (&s, suffix) in sub.iter() {
                    done.entry(s + 1).or_insert_with(|| {
                        let mut w = vec![kids[i]];
                        w.extend_from_slice(suffix);
                        w
                    });
                }
                if early_exit && done.len() >= 2 {
                    let mut it = done.values().map(|suf| {
                        let mut w = path.clone();
                        w.extend_from_slice(suf);
                        w
                    });
                    let (a, b) = (it.next().expect("two"), it.next().expect("two"));
                    root = Some(Err(Stop::Split(a, b)));
                    break;
                }
            }
            Err(stop) => {
                root = Some(Err(stop));
                break;
            }
        }
    }
    let root = root.unwrap_or_else(|| {
        Ok(Arc::new(
            done.into_iter()
                .map(|(s, suf)| {
                    let mut w = path.clone();
                    w.extend_from_slice(&suf);
                    (s + path.len(), w)
                })
                .collect(),
        ))
    });
    Outcome { root, found, nodes }
}

fn irr(b: &Bsgs, points: &[usize]) -> IrrSequence {
    is_irredundant(b, points).expect("search only produces irredundant sequences")
}

/// The exact set of irredundant base sizes with one witness per size.
pub fn irredundant_spectrum(b: &Bsgs, caps: &SearchCaps) -> Spectrum {
    let out = run(b, caps, false);
    let incomplete = out.root.is_err();
    let witnesses: BTreeMap<usize, IrrSequence> = out.found.iter().map(|(&s, w)| (s, irr(b, w))).collect();
    Spectrum {
        sizes: witnesses.keys().copied().collect(),
        witnesses,
        node_count: out.nodes,
        incomplete,
    }
}

/// Decides whether all irredundant bases have the same size, stopping at the
/// first node below which two completion lengths occur.
pub fn is_ibis(b: &Bsgs, caps: &SearchCaps) -> Result<IbisVerdict> {
    let out = run(b, caps, true);
    let sizes_seen: Vec<usize> = out.found.keys().copied().collect();
    let verdict = match out.root {
        Ok(_) => IbisVerdict {
            is_ibis: Some(true),
            base_size: sizes_seen.first().copied(),
            counterexample: None,
            sizes_seen,
            node_count: out.nodes,
        },
        Err(Stop::Split(x, y)) => {
            let (x, y) = (irr(b, &x), irr(b, &y));
            let base_size = match minimal_base_size(b, caps) {
                Ok(w) => Some(w.len()),
                Err(Error::Capacity { .. }) => None,
                Err(e) => return Err(e),
            };
            IbisVerdict {
                is_ibis: Some(false),
                base_size,
                counterexample: Some((x, y)),
                sizes_seen,
                node_count: out.nodes,
            }
        }
        Err(_) => IbisVerdict {
            is_ibis: None,
            base_size: None,
            counterexample: None,
            sizes_seen,
            node_count: out.nodes,
        },
    };
    Ok(verdict)
}

/// b(G) with a witness base, by iterative deepening over orbit representatives.
pub fn minimal_base_size(b: &Bsgs, caps: &SearchCaps) -> Result<IrrSequence> {
    struct Ids<'a> {
        caps: &'a SearchCaps,
        start: Instant,
        nodes: u64,
        /// (fixed-point set, budget) pairs known to fail.
        failed: HashSet<(Vec<u32>, usize)>,
    }

    impl Ids<'_> {
        fn dfs(&mut self, h: &Bsgs, budget: usize, path: &mut Vec<usize>) -> std::result::Result<bool, ()> {
            if h.is_trivial() {
                return Ok(true);
            }
            if budget == 0 {
                return Ok(false);
            }
            let parts = orbit_partition(h.degree(), h.strong_generators(), None);
            let largest = parts.orbits().iter().map(Vec::len).max().unwrap_or(1);
            // |H| <= largest^budget is necessary for a base of that length.
            let bound = num_bigint::BigUint::from(largest).pow(budget as u32);
            if h.order() > &bound {
                return Ok(false);
            }
            if budget == 1 {
                let n = h.order().to_usize().unwrap_or(usize::MAX);
                if let Some(o) = parts.orbits().iter().find(|o| o.len() == n) {
                    path.push(o[0]);
                    return Ok(true);
                }
                return Ok(false);
            }
            let key: Vec<u32> = h.fixed_points().iter().map(|&p| p as u32).collect();
            if self.failed.contains(&(key.clone(), budget)) {
                return Ok(false);
            }
            self.nodes += 1;
            if self.nodes > self.caps.nodes || (self.nodes.is_multiple_of(64) && self.start.elapsed() > self.caps.time)
            {
                return Err(());
            }
            for o in parts.orbits().iter().filter(|o| o.len() > 1) {
                let child = h.point_stabilizer(o[0]);
                path.push(o[0]);
                if self.dfs(&child, budget - 1, path)? {
                    return Ok(true);
                }
                path.pop();
            }
            self.failed.insert((key, budget));
            Ok(false)
        }
    }

    let mut ids = Ids {
        caps,
        start: Instant::now(),
        nodes: 0,
        failed: HashSet::new(),
    };
    let greedy = super::extend_to_irredundant_base(b, &irr(b, &[]));
    for budget in 0..greedy.len() {
        let mut path = Vec::new();
        match ids.dfs(b, budget, &mut path) {
            Ok(true) => return Ok(irr(b, &path)),
            Ok(false) => {}
            Err(()) => {
                return Err(Error::Capacity {
                    what: "base-size search nodes",
                    cap: caps.nodes,
                    needed: format!("b(G) in [{}, {}]", budget, greedy.len()),
                })
            }
        }
    }
    Ok(greedy)
}
