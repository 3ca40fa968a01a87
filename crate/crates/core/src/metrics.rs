//! Connectivity, shortest-path distances and diameter.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EvenGraph;

/// A length that may be infinite: a diameter of a disconnected graph, or the
/// girth of a forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Extent {
    Finite(u32),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<u32> {
        match self {
            Extent::Finite(d) => Some(d),
            Extent::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Extent::Finite(_))
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(d) => write!(f, "{d}"),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Extent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Extent::Infinite);
        }
        s.parse()
            .map(Extent::Finite)
            .map_err(|_| Error::domain(format!("expected an integer or \"inf\", got {s:?}")))
    }
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn connected_components(graph: &EvenGraph) -> Vec<Vec<u64>> {
    let count = graph.vertex_count();
    let mut seen = vec![false; count];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut members = Vec::new();
        while let Some(u) = queue.pop_front() {
            members.push(graph.vertex(u));
            for &w in graph.neighbor_indices(u) {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

pub fn is_connected(graph: &EvenGraph) -> bool {
    connected_components(graph).len() <= 1
}

/// Single-source BFS result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub source: u64,
    /// Distance to each vertex, in the graph's vertex order.
    pub distances: Vec<Option<u32>>,
    pub eccentricity: Extent,
}

impl DistanceReport {
    pub fn distance_to(&self, graph: &EvenGraph, v: u64) -> Option<u32> {
        graph.index_of(v).and_then(|i| self.distances[i])
    }
}

fn bfs_levels(graph: &EvenGraph, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; graph.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = dist[u].map(|d| d + 1);
        for &w in graph.neighbor_indices(u) {
            if dist[w as usize].is_none() {
                dist[w as usize] = next;
                queue.push_back(w as usize);
            }
        }
    }
    dist
}

pub fn bfs(graph: &EvenGraph, source: u64) -> Result<DistanceReport> {
    let s = graph.require_index(source)?;
    let distances = bfs_levels(graph, s);
    let eccentricity = distances
        .iter()
        .try_fold(0u32, |acc, d| d.map(|d| acc.max(d)))
        .map_or(Extent::Infinite, Extent::Finite);
    Ok(DistanceReport {
        source,
        distances,
        eccentricity,
    })
}

/// Shortest-path length, `None` when `v` is unreachable from `u`.
pub fn distance(graph: &EvenGraph, u: u64, v: u64) -> Result<Option<u32>> {
    let s = graph.require_index(u)?;
    let t = graph.require_index(v)?;
    Ok(bfs_levels(graph, s)[t])
}

/// Diameter by bit-parallel multi-source BFS: 64 sources advance together,
/// one bit per source in each vertex's word. Batches run on the rayon pool and
/// are merged by `max`, so the result does not depend on the worker count.
pub fn diameter(graph: &EvenGraph) -> Extent {
    let count = graph.vertex_count();
    if count == 0 {
        return Extent::Finite(0);
    }
    if !is_connected(graph) {
        return Extent::Infinite;
    }
    let batches: Vec<usize> = (0..count).step_by(64).collect();
    let worst = batches
        .par_iter()
        .map(|&start| {
            let sources = start..(start + 64).min(count);
            batch_eccentricities(graph, sources).into_iter().max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Extent::Finite(worst)
}

/// Eccentricity of every vertex, in vertex order.
pub fn eccentricities(graph: &EvenGraph) -> Vec<Extent> {
    let count = graph.vertex_count();
    let components = connected_components(graph);
    if components.len() > 1 {
        return vec![Extent::Infinite; count];
    }
    let batches: Vec<usize> = (0..count).step_by(64).collect();
    batches
        .par_iter()
        .flat_map_iter(|&start| batch_eccentricities(graph, start..(start + 64).min(count)))
        .map(Extent::Finite)
        .collect()
}

/// Eccentricities of up to 64 sources in a connected graph.
fn batch_eccentricities(graph: &EvenGraph, sources: std::ops::Range<usize>) -> Vec<u32> {
    let count = graph.vertex_count();
    let width = sources.len();
    let full: u64 = if width == 64 { !0 } else { (1u64 << width) - 1 };
    let mut seen = vec![0u64; count];
    let mut frontier = vec![0u64; count];
    let mut next = vec![0u64; count];
    for (bit, s) in sources.enumerate() {
        seen[s] |= 1 << bit;
        frontier[s] |= 1 << bit;
    }
    let mut ecc = vec![0u32; width];
    let mut level = 0u32;
    loop {
        level += 1;
        let mut reached = 0u64;
        for v in 0..count {
            let have = seen[v];
            if have == full {
                next[v] = 0;
                continue;
            }
            let mut acc = 0u64;
            for &u in graph.neighbor_indices(v) {
                acc |= frontier[u as usize];
                if acc | have == full {
                    break;
                }
            }
            let fresh = acc & !have;
            next[v] = fresh;
            reached |= fresh;
        }
        if reached == 0 {
            break;
        }
        let mut bits = reached;
        while bits != 0 {
            ecc[bits.trailing_zeros() as usize] = level;
            bits &= bits - 1;
        }
        for v in 0..count {
            seen[v] |= next[v];
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    ecc
}

/// Diameter by one plain BFS per source, reusing a single epoch-stamped
/// visited array. Kept as the reference for [`diameter`].
pub fn diameter_reference(graph: &EvenGraph) -> Extent {
    let count = graph.vertex_count();
    let mut stamp = vec![0u32; count];
    let mut dist = vec![0u32; count];
    let mut queue = Vec::with_capacity(count);
    let mut worst = 0;
    for s in 0..count {
        let epoch = s as u32 + 1;
        queue.clear();
        queue.push(s);
        stamp[s] = epoch;
        dist[s] = 0;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &w in graph.neighbor_indices(u) {
                let w = w as usize;
                if stamp[w] != epoch {
                    stamp[w] = epoch;
                    dist[w] = dist[u] + 1;
                    worst = worst.max(dist[w]);
                    queue.push(w);
                }
            }
        }
        if queue.len() < count {
            return Extent::Infinite;
        }
    }
    Extent::Finite(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphSpec};
    use crate::numeric::OddSetKind;
    use proptest::prelude::*;

    fn graph(kind: OddSetKind, n: u64) -> EvenGraph {
        build_graph(&GraphSpec::new(kind, n).unwrap()).unwrap()
    }

    fn pmm(p: u64, n: u64) -> EvenGraph {
        graph(OddSetKind::PrimeMultipleMissing(p), n)
    }

    #[test]
    fn component_examples() {
        assert_eq!(connected_components(&pmm(3, 18)).len(), 1);
        assert_eq!(
            connected_components(&graph(OddSetKind::Goldbach, 2)),
            vec![vec![0], vec![2], vec![4]]
        );
        assert_eq!(connected_components(&pmm(3, 2)), vec![vec![2, 4]]);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&pmm(5, 30)), Extent::Finite(3));
        let g35 = |n| graph(OddSetKind::PrimeIntersection(vec![3, 5]), n);
        assert_eq!(diameter(&g35(13)), Extent::Finite(3));
        assert_eq!(diameter(&g35(14)), Extent::Finite(4));
        assert_eq!(diameter(&g35(15)), Extent::Finite(4));
        assert_eq!(diameter(&pmm(3, 2)), Extent::Finite(1));
        assert_eq!(diameter(&pmm(3, 1)), Extent::Finite(0));
        assert_eq!(diameter(&graph(OddSetKind::Goldbach, 2)), Extent::Infinite);
    }

    #[test]
    fn distance_examples() {
        let g = pmm(5, 10);
        assert_eq!(distance(&g, 10, 20).unwrap(), Some(3));
        assert!(g.has_edge(10, 4) && g.has_edge(4, 2) && g.has_edge(2, 20));
        assert_eq!(distance(&g, 8, 8).unwrap(), Some(0));
        assert_eq!(distance(&pmm(3, 18), 6, 12).unwrap(), Some(3));
        assert_eq!(distance(&pmm(3, 18), 6, 18).unwrap(), Some(2));
        assert!(distance(&g, 22, 2).is_err());
        assert_eq!(distance(&graph(OddSetKind::Goldbach, 2), 0, 4).unwrap(), None);
    }

    #[test]
    fn report_eccentricity() {
        let g = pmm(3, 18);
        let r = bfs(&g, 2).unwrap();
        assert_eq!(r.distance_to(&g, 2), Some(0));
        assert_eq!(r.distance_to(&g, 8), Some(1));
        assert!(r.eccentricity <= Extent::Finite(3));
        let r = bfs(&graph(OddSetKind::Goldbach, 2), 0).unwrap();
        assert_eq!(r.eccentricity, Extent::Infinite);
    }

    #[test]
    fn extent_text_round_trip() {
        for e in [Extent::Finite(0), Extent::Finite(17), Extent::Infinite] {
            assert_eq!(e.to_string().parse::<Extent>().unwrap(), e);
        }
        assert!("x".parse::<Extent>().is_err());
        assert!(Extent::Finite(u32::MAX) < Extent::Infinite);
    }

    #[test]
    fn parallel_diameter_matches_reference_across_batch_sizes() {
        for n in [1, 2, 3, 63, 64, 65, 129, 300] {
            for kind in [
                OddSetKind::PrimeMultipleMissing(3),
                OddSetKind::PrimeIntersection(vec![3, 5]),
                OddSetKind::NearGoldbach,
                OddSetKind::Goldbach,
            ] {
                let g = graph(kind.clone(), n);
                assert_eq!(diameter(&g), diameter_reference(&g), "{kind} n={n}");
            }
        }
    }

    #[test]
    fn diameter_independent_of_thread_count() {
        let g = graph(OddSetKind::NearGoldbach, 700);
        let expected = diameter_reference(&g);
        for threads in [1, 2, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            assert_eq!(pool.install(|| diameter(&g)), expected);
        }
    }

    proptest! {
        #[test]
        fn eccentricities_agree_with_bfs(p_idx in 0usize..3, n in 1u64..150) {
            let g = pmm([3u64, 5, 7][p_idx], n);
            let ecc = eccentricities(&g);
            for (i, &v) in g.vertices().iter().enumerate() {
                prop_assert_eq!(ecc[i], bfs(&g, v).unwrap().eccentricity);
            }
            prop_assert_eq!(ecc.iter().copied().max().unwrap(), diameter(&g));
        }

        #[test]
        fn distance_is_symmetric(n in 2u64..120, a in 1u64..120, b in 1u64..120) {
            let g = graph(OddSetKind::NearGoldbach, n);
            let (u, v) = (2 * (a % n + 1), 2 * (b % n + 1));
            prop_assert_eq!(distance(&g, u, v).unwrap(), distance(&g, v, u).unwrap());
        }
    }
}
