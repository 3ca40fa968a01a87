//! `G(3,5,n)`: the `G(3,n)` path broken into an initial ten-vertex path and
//! five-vertex strips, plus the independent set `V1 ∪ V2`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EvenGraph;
use crate::numeric::OddSetKind;
use crate::structure::pmm::decompose_g3;

pub const INITIAL_PATH: [u64; 10] = [32, 26, 20, 14, 8, 2, 4, 10, 16, 22];

/// Which part of the independent set the first (smallest) vertex of a strip
/// is adjacent to in `G(3,n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StripKind {
    V1Facing,
    V2Facing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strip {
    /// Ascending, `z, z+6, ...` with `z ≡ 8 (mod 10)`.
    pub vertices: Vec<u64>,
    pub kind: StripKind,
}

impl Strip {
    pub fn is_full(&self) -> bool {
        self.vertices.len() == 5
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G35Decomposition {
    pub n: u64,
    pub v1: Vec<u64>,
    pub v2: Vec<u64>,
    /// [`INITIAL_PATH`] restricted to the vertices present.
    pub initial_path: Vec<u64>,
    /// Ordered by smallest vertex.
    pub strips: Vec<Strip>,
}

/// Whether the `G(3,n)` path edge `x y` is missing from `G(3,5,n)`.
pub fn is_break(x: u64, y: u64) -> bool {
    (x + y) % 10 == 0 && x + y > 10
}

pub fn decompose_g35(n: u64) -> Result<G35Decomposition> {
    let g3 = decompose_g3(n)?;
    let mut segments: Vec<Vec<u64>> = vec![];
    let mut current: Vec<u64> = vec![];
    for &v in &g3.path {
        if let Some(&last) = current.last() {
            if is_break(last, v) {
                segments.push(std::mem::take(&mut current));
            }
        }
        current.push(v);
    }
    if !current.is_empty() {
        segments.push(current);
    }
    let mut initial_path = vec![];
    let mut strips = vec![];
    for segment in segments {
        if segment.contains(&2) {
            initial_path = segment;
            continue;
        }
        let mut vertices = segment;
        vertices.sort_unstable();
        let kind = if vertices[0] % 4 == 2 {
            StripKind::V1Facing
        } else {
            StripKind::V2Facing
        };
        strips.push(Strip { vertices, kind });
    }
    strips.sort_by_key(|s| s.vertices[0]);
    Ok(G35Decomposition {
        n,
        v1: g3.v1,
        v2: g3.v2,
        initial_path,
        strips,
    })
}

/// A path of `G(3,5,n)` whose adjacency to `V1 ∪ V2` is tabulated.
#[derive(Debug, Clone, Copy)]
pub enum ProfileTarget<'a> {
    InitialPath,
    Strip(&'a Strip),
}

struct ProfileRow {
    initial: &'static [u64],
    v1_facing: &'static [usize],
    v2_facing: &'static [usize],
}

fn profile_row(in_v1: bool, residue: u64) -> ProfileRow {
    let class = match residue {
        2 | 8 => 0,
        4 | 6 => 1,
        _ => 2,
    };
    let rows = if in_v1 {
        [
            ProfileRow { initial: &[26, 14, 10], v1_facing: &[3], v2_facing: &[2, 4] },
            ProfileRow { initial: &[2, 10, 22], v1_facing: &[1, 3, 5], v2_facing: &[] },
            ProfileRow { initial: &[26, 14, 2, 22], v1_facing: &[1, 5], v2_facing: &[2, 4] },
        ]
    } else {
        [
            ProfileRow { initial: &[20, 4, 16], v1_facing: &[2, 4], v2_facing: &[3] },
            ProfileRow { initial: &[32, 20, 8], v1_facing: &[], v2_facing: &[1, 3, 5] },
            ProfileRow { initial: &[32, 8, 4, 16], v1_facing: &[2, 4], v2_facing: &[1, 5] },
        ]
    };
    rows.into_iter().nth(class).unwrap()
}

/// Neighbors of `x ∈ V1 ∪ V2` inside `target`, read from the residue table
/// and then widened by pairs whose sum or difference is exactly 10, where
/// the multiple of 5 is trivial.
pub fn strip_profile(x: u64, target: ProfileTarget<'_>) -> Result<BTreeSet<u64>> {
    let in_v1 = match x % 12 {
        0 if x > 0 => true,
        6 => false,
        _ => return Err(Error::domain(format!("{x} is not in V1 ∪ V2"))),
    };
    let row = profile_row(in_v1, x % 10);
    let (members, mut profile): (Vec<u64>, BTreeSet<u64>) = match target {
        ProfileTarget::InitialPath => (INITIAL_PATH.to_vec(), row.initial.iter().copied().collect()),
        ProfileTarget::Strip(strip) => {
            let positions = match strip.kind {
                StripKind::V1Facing => row.v1_facing,
                StripKind::V2Facing => row.v2_facing,
            };
            let picked = positions
                .iter()
                .filter_map(|&pos| strip.vertices.get(pos - 1).copied())
                .collect();
            (strip.vertices.clone(), picked)
        }
    };
    for y in members {
        let special = x.abs_diff(y) == 10 || x + y == 10;
        let sum = (x + y) / 2;
        if special && x % 4 != y % 4 && !(sum % 5 == 0 && sum != 5) {
            profile.insert(y);
        }
    }
    Ok(profile)
}

impl G35Decomposition {
    pub fn full_strips(&self) -> impl Iterator<Item = &Strip> {
        self.strips.iter().filter(|s| s.is_full())
    }

    pub fn check(&self, graph: &EvenGraph) -> Result<()> {
        let fail = |msg: String| Err(Error::Consistency(msg));
        if graph.spec().kind() != &OddSetKind::PrimeIntersection(vec![3, 5]) || graph.n() != self.n {
            return Err(Error::Mismatch(format!(
                "decomposition of G(3,5,{}) checked against {} with n = {}",
                self.n,
                graph.spec().kind(),
                graph.n()
            )));
        }

        let mut paths: Vec<&[u64]> = vec![&self.initial_path];
        paths.extend(self.strips.iter().map(|s| s.vertices.as_slice()));
        let mut owner = vec![None; graph.vertex_count()];
        let mut place = |v: u64, tag: usize| -> Result<()> {
            let i = graph
                .index_of(v)
                .ok_or_else(|| Error::Consistency(format!("{v} is not a vertex")))?;
            if owner[i].is_some() {
                return Err(Error::Consistency(format!("{v} is assigned twice")));
            }
            owner[i] = Some(tag);
            Ok(())
        };
        for &v in self.v1.iter().chain(&self.v2) {
            place(v, 0)?;
        }
        for (k, path) in paths.iter().enumerate() {
            for &v in path.iter() {
                place(v, k + 1)?;
            }
        }
        if let Some(i) = owner.iter().position(Option::is_none) {
            return fail(format!("{} is in no part", graph.vertex(i)));
        }

        for &u in self.v1.iter().chain(&self.v2) {
            if let Some(v) = graph.neighbors(u).find(|&v| self.v1.contains(&v) || self.v2.contains(&v)) {
                return fail(format!("V1 ∪ V2 has the edge {u}-{v}"));
            }
        }

        for (k, order) in paths.iter().enumerate() {
            for (a, &u) in order.iter().enumerate() {
                for w in graph.neighbors(u) {
                    let Some(tag) = owner[graph.index_of(w).unwrap()] else { continue };
                    if tag == 0 {
                        continue;
                    }
                    if tag != k + 1 {
                        return fail(format!("edge {u}-{w} joins two different paths"));
                    }
                    let b = order.iter().position(|&z| z == w).unwrap();
                    if a.abs_diff(b) != 1 {
                        return fail(format!("chord {u}-{w} inside a path"));
                    }
                }
                if a + 1 < order.len() && !graph.has_edge(u, order[a + 1]) {
                    return fail(format!("path edge {u}-{} missing", order[a + 1]));
                }
            }
        }

        let g3_path = decompose_g3(self.n)?.path;
        for w in g3_path.windows(2) {
            if graph.has_edge(w[0], w[1]) == is_break(w[0], w[1]) {
                return fail(format!("break rule violated at {}-{}", w[0], w[1]));
            }
        }

        let top = 2 * self.n;
        let mut short = 0;
        for strip in &self.strips {
            let len = strip.vertices.len();
            if len > 5 {
                return fail(format!("strip {:?} has {len} vertices", strip.vertices));
            }
            if len < 5 {
                short += 1;
                // A short strip must be cut off by the end of the vertex range.
                if strip.vertices.last().unwrap() + 6 <= top {
                    return fail(format!("strip {:?} is short away from the boundary", strip.vertices));
                }
            }
        }
        if short > 2 {
            return fail(format!("{short} short strips"));
        }

        for &x in self.v1.iter().chain(&self.v2) {
            let present: BTreeSet<u64> = self.initial_path.iter().copied().collect();
            let predicted: BTreeSet<u64> = strip_profile(x, ProfileTarget::InitialPath)?
                .intersection(&present)
                .copied()
                .collect();
            let actual: BTreeSet<u64> = graph.neighbors(x).filter(|v| present.contains(v)).collect();
            if predicted != actual {
                return fail(format!("{x} meets the initial path in {actual:?}, table gives {predicted:?}"));
            }
            for strip in &self.strips {
                let predicted = strip_profile(x, ProfileTarget::Strip(strip))?;
                let actual: BTreeSet<u64> =
                    graph.neighbors(x).filter(|v| strip.vertices.contains(v)).collect();
                if predicted != actual {
                    return fail(format!(
                        "{x} meets strip {:?} in {actual:?}, table gives {predicted:?}",
                        strip.vertices
                    ));
                }
            }
        }

        if self.initial_path.len() == INITIAL_PATH.len() {
            let independent: BTreeSet<u64> = self.v1.iter().chain(&self.v2).copied().collect();
            for &x in &independent {
                if !graph.neighbors(x).any(|v| self.initial_path.contains(&v)) {
                    return fail(format!("{x} has no neighbor on the initial path"));
                }
            }
            for path in &paths {
                if let Some(&u) = path.iter().find(|&&u| !graph.neighbors(u).any(|v| independent.contains(&v))) {
                    return fail(format!("path vertex {u} has no neighbor in V1 ∪ V2"));
                }
            }
        }
        Ok(())
    }
}
