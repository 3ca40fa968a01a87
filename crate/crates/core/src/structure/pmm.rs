//! Decomposition of `G(p, n)` into an independent set and `eta(p)` paths.
//!
//! The even multiples of `p` are pairwise non-adjacent. Every other even
//! vertex falls into one of the residue pairs `{r, p - r}`; within a pair the
//! two chains of step `2p` meet where `a + b = 2p` and form one path. All
//! remaining adjacencies are complete between opposite partite sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EvenGraph;
use crate::numeric::{eta, is_odd_prime, OddSetKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDecomposition {
    pub p: u64,
    pub n: u64,
    /// Even multiples of `p` that are `≡ 0 (mod 4)`.
    pub independent_x: Vec<u64>,
    /// Even multiples of `p` that are `≡ 2 (mod 4)`.
    pub independent_y: Vec<u64>,
    /// One path per residue pair `{r, p - r}`, `r = 1 ..= (p-1)/2`.
    pub paths: Vec<Vec<u64>>,
}

fn chain(first: u64, step: u64, max: u64) -> impl DoubleEndedIterator<Item = u64> {
    let count = if first > max { 0 } else { (max - first) / step + 1 };
    (0..count).map(move |k| first + k * step)
}

/// The vertices of the path for the residue pair `{r, p - r}` in `G(p, n)`.
pub fn residue_pair_path(p: u64, r: u64, n: u64) -> Vec<u64> {
    let max = 2 * n;
    let even = if r % 2 == 0 { r } else { p - r };
    chain(even, 2 * p, max)
        .rev()
        .chain(chain(2 * p - even, 2 * p, max))
        .collect()
}

pub fn decompose_pmm(p: u64, n: u64) -> Result<PrimeDecomposition> {
    if !is_odd_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let (independent_x, independent_y) = chain(2 * p, 2 * p, 2 * n).partition(|v| v % 4 == 0);
    let paths = (1..=eta(p)?)
        .map(|r| residue_pair_path(p, r, n))
        .filter(|path| !path.is_empty())
        .collect();
    Ok(PrimeDecomposition {
        p,
        n,
        independent_x,
        independent_y,
        paths,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Unassigned,
    Independent,
    Path(usize, usize),
}

fn opposite(u: u64, v: u64) -> bool {
    (u % 4 == 0) != (v % 4 == 0)
}

impl PrimeDecomposition {
    /// Checks the decomposition against a built graph: the parts partition
    /// the vertex set, and every adjacency is exactly the one the
    /// decomposition predicts.
    pub fn check(&self, graph: &EvenGraph) -> Result<()> {
        if graph.spec().kind() != &OddSetKind::PrimeMultipleMissing(self.p) || graph.n() != self.n {
            return Err(Error::Mismatch(format!(
                "decomposition of G({}, {}) checked against {} with n = {}",
                self.p,
                self.n,
                graph.spec().kind(),
                graph.n()
            )));
        }
        let count = graph.vertex_count();
        let mut role = vec![Role::Unassigned; count];
        let mut assign = |v: u64, r: Role| -> Result<()> {
            let i = graph
                .index_of(v)
                .ok_or_else(|| Error::Consistency(format!("{v} is not a vertex")))?;
            if role[i] != Role::Unassigned {
                return Err(Error::Consistency(format!("{v} is assigned twice")));
            }
            role[i] = r;
            Ok(())
        };
        for &v in self.independent_x.iter().chain(&self.independent_y) {
            assign(v, Role::Independent)?;
        }
        for (k, path) in self.paths.iter().enumerate() {
            for (pos, &v) in path.iter().enumerate() {
                assign(v, Role::Path(k, pos))?;
            }
        }
        if let Some(i) = role.iter().position(|r| *r == Role::Unassigned) {
            return Err(Error::Consistency(format!("{} is in no part", graph.vertex(i))));
        }

        let mut expected = Vec::new();
        for i in 0..count {
            let u = graph.vertex(i);
            expected.clear();
            for (j, &rj) in role.iter().enumerate() {
                let v = graph.vertex(j);
                let adjacent = match (role[i], rj) {
                    _ if i == j => false,
                    (Role::Independent, Role::Independent) => false,
                    (Role::Path(a, x), Role::Path(b, y)) if a == b => x.abs_diff(y) == 1,
                    _ => opposite(u, v),
                };
                if adjacent {
                    expected.push(j as u32);
                }
            }
            if graph.neighbor_indices(i) != expected.as_slice() {
                let actual: Vec<u64> = graph.neighbors(u).collect();
                let predicted: Vec<u64> = expected.iter().map(|&j| graph.vertex(j as usize)).collect();
                return Err(Error::Consistency(format!(
                    "neighbors of {u} are {actual:?}, decomposition predicts {predicted:?}"
                )));
            }
        }
        Ok(())
    }
}

/// `G(3, n)`: an independent set `V1 ∪ V2` and one path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G3Decomposition {
    /// Vertices `≡ 0 (mod 12)`.
    pub v1: Vec<u64>,
    /// Vertices `≡ 6 (mod 12)`.
    pub v2: Vec<u64>,
    pub path: Vec<u64>,
}

pub fn decompose_g3(n: u64) -> Result<G3Decomposition> {
    let d = decompose_pmm(3, n)?;
    Ok(G3Decomposition {
        v1: d.independent_x,
        v2: d.independent_y,
        path: d.paths.into_iter().next().unwrap_or_default(),
    })
}

impl G3Decomposition {
    fn n(&self) -> u64 {
        (self.v1.len() + self.v2.len() + self.path.len()) as u64
    }

    /// Path vertices `≡ 2 (mod 6)`.
    pub fn v31(&self) -> Vec<u64> {
        self.path.iter().copied().filter(|v| v % 6 == 2).collect()
    }

    /// Path vertices `≡ 4 (mod 6)`.
    pub fn v32(&self) -> Vec<u64> {
        self.path.iter().copied().filter(|v| v % 6 == 4).collect()
    }

    pub fn as_prime(&self) -> PrimeDecomposition {
        PrimeDecomposition {
            p: 3,
            n: self.n(),
            independent_x: self.v1.clone(),
            independent_y: self.v2.clone(),
            paths: if self.path.is_empty() { vec![] } else { vec![self.path.clone()] },
        }
    }

    pub fn check(&self, graph: &EvenGraph) -> Result<()> {
        self.as_prime().check(graph)
    }
}

/// `G(5, n)`: blocks `A, D, E ⊆ X` and `F, B, C ⊆ Y` by residue mod 5
/// (`{0}`, `{1,4}`, `{2,3}`), with paths over `B ∪ D` and `C ∪ E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G5Decomposition {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub d: Vec<u64>,
    pub e: Vec<u64>,
    pub f: Vec<u64>,
    pub path_bd: Vec<u64>,
    pub path_ce: Vec<u64>,
}

pub fn decompose_g5(n: u64) -> Result<G5Decomposition> {
    let vertices: Vec<u64> = (1..=n).map(|i| 2 * i).collect();
    let pick = |in_x: bool, residues: &[u64]| -> Vec<u64> {
        vertices
            .iter()
            .copied()
            .filter(|v| (v % 4 == 0) == in_x && residues.contains(&(v % 5)))
            .collect()
    };
    Ok(G5Decomposition {
        a: pick(true, &[0]),
        b: pick(false, &[1, 4]),
        c: pick(false, &[2, 3]),
        d: pick(true, &[1, 4]),
        e: pick(true, &[2, 3]),
        f: pick(false, &[0]),
        path_bd: residue_pair_path(5, 1, n),
        path_ce: residue_pair_path(5, 2, n),
    })
}

impl G5Decomposition {
    pub fn paths(&self) -> Vec<&Vec<u64>> {
        [&self.path_bd, &self.path_ce].into_iter().filter(|p| !p.is_empty()).collect()
    }

    pub fn check(&self, graph: &EvenGraph) -> Result<()> {
        let prime = PrimeDecomposition {
            p: 5,
            n: graph.n(),
            independent_x: self.a.clone(),
            independent_y: self.f.clone(),
            paths: self.paths().into_iter().cloned().collect(),
        };
        prime.check(graph)?;
        let mut bd: Vec<u64> = self.b.iter().chain(&self.d).copied().collect();
        let mut path: Vec<u64> = self.path_bd.clone();
        bd.sort_unstable();
        path.sort_unstable();
        if bd != path {
            return Err(Error::Consistency("B ∪ D is not the vertex set of its path".into()));
        }
        let mut ce: Vec<u64> = self.c.iter().chain(&self.e).copied().collect();
        let mut path: Vec<u64> = self.path_ce.clone();
        ce.sort_unstable();
        path.sort_unstable();
        if ce != path {
            return Err(Error::Consistency("C ∪ E is not the vertex set of its path".into()));
        }
        let complete = [
            ("A", &self.a, "B", &self.b),
            ("A", &self.a, "C", &self.c),
            ("B", &self.b, "E", &self.e),
            ("C", &self.c, "D", &self.d),
            ("D", &self.d, "F", &self.f),
            ("E", &self.e, "F", &self.f),
        ];
        for (ln, left, rn, right) in complete {
            for &u in left {
                if let Some(&v) = right.iter().find(|&&v| !graph.has_edge(u, v)) {
                    return Err(Error::Consistency(format!("{ln}-{rn} not complete: {u} and {v}")));
                }
            }
        }
        for &u in &self.a {
            if let Some(&v) = self.f.iter().find(|&&v| graph.has_edge(u, v)) {
                return Err(Error::Consistency(format!("edge {u}-{v} between A and F")));
            }
        }
        Ok(())
    }
}
