use crate::bsgs::Bsgs;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Orbits of a group on (a subset of) its points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    degree: usize,
    /// Point -> index into `orbits`; `None` for points outside the requested subset.
    index: Vec<Option<usize>>,
    /// Each orbit sorted ascending; orbits ordered by their smallest point.
    orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// The smallest point of the orbit containing `x`.
    pub fn representative(&self, x: usize) -> Option<usize> {
        self.index[x].map(|i| self.orbits[i][0])
    }

    pub fn orbit_of(&self, x: usize) -> Option<&[usize]> {
        self.index[x].map(|i| self.orbits[i].as_slice())
    }
}

pub(crate) fn orbit_partition(degree: usize, gens: &[Perm], subset: Option<&[usize]>) -> OrbitPartition {
    let mut index: Vec<Option<usize>> = vec![None; degree];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let starts: Vec<usize> = match subset {
        Some(s) => {
            let mut s = s.to_vec();
            s.sort_unstable();
            s
        }
        None => (0..degree).collect(),
    };
    for start in starts {
        if index[start].is_some() {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        index[start] = Some(id);
        let mut pos = 0;
        while pos < orbit.len() {
            let x = orbit[pos];
            for g in gens {
                let y = g.image(x);
                if index[y].is_none() {
                    index[y] = Some(id);
                    orbit.push(y);
                }
            }
            pos += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    OrbitPartition { degree, index, orbits }
}

/// Orbits of `g`, restricted to the orbits meeting `subset` when one is given.
pub fn orbits(g: &PermGroup, subset: Option<&[usize]>) -> OrbitPartition {
    orbit_partition(g.degree(), g.generators(), subset)
}

pub fn is_transitive(g: &PermGroup) -> bool {
    orbit_partition(g.degree(), g.generators(), Some(&[0])).orbits[0].len() == g.degree()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of two roots; the smaller root survives.
    fn union_roots(&mut self, a: usize, b: usize) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
    }
}

/// The smallest block of imprimitivity containing both `a` and `b`, sorted.
pub fn minimal_block(g: &PermGroup, a: usize, b: usize) -> Vec<usize> {
    let n = g.degree();
    let mut uf = UnionFind::new(n);
    let (ra, rb) = (uf.find(a), uf.find(b));
    if ra != rb {
        uf.union_roots(ra, rb);
    }
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for s in g.generators() {
            let u = uf.find(s.image(x));
            let v = uf.find(s.image(y));
            if u != v {
                uf.union_roots(u, v);
                queue.push((u, v));
            }
        }
    }
    let root = uf.find(a);
    (0..n).filter(|&x| uf.find(x) == root).collect()
}

/// A nontrivial block containing point 0, if the (transitive) group has one.
pub fn nontrivial_block(g: &PermGroup) -> Result<Option<Vec<usize>>> {
    if !is_transitive(g) {
        return Err(Error::Precondition(
            "primitivity is only defined for transitive groups".into(),
        ));
    }
    let n = g.degree();
    if n <= 2 {
        return Ok(None);
    }
    // Blocks through 0 and j depend only on the suborbit of j, so one
    // representative per orbit of the point stabilizer suffices.
    let stab = Bsgs::new(g).point_stabilizer(0);
    let sub = orbit_partition(n, stab.strong_generators(), None);
    for orbit in sub.orbits() {
        let j = orbit[0];
        if j == 0 {
            continue;
        }
        let block = minimal_block(g, 0, j);
        if block.len() < n {
            return Ok(Some(block));
        }
    }
    Ok(None)
}

pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    Ok(nontrivial_block(g)?.is_none())
}
