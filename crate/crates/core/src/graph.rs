//! Materialized odd-even graphs in compressed sparse row form.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{OddSetKind, OddSetSpec};

/// Largest `n` that [`build_graph`] accepts without explicit options.
pub const DEFAULT_MAX_N: u64 = 20_000;

/// Which finite odd-even graph to build: an odd set together with its `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    odd_set: OddSetSpec,
    include_zero: bool,
}

impl GraphSpec {
    /// Vertex set `{2, ..., 2n}`, or `{0, 2, ..., 2n}` for the Goldbach kind.
    pub fn new(kind: OddSetKind, n: u64) -> Result<Self> {
        let include_zero = kind.includes_zero();
        Ok(GraphSpec {
            odd_set: OddSetSpec::new(kind, n)?,
            include_zero,
        })
    }

    pub fn pmm(p: u64, n: u64) -> Result<Self> {
        Self::new(OddSetKind::PrimeMultipleMissing(p), n)
    }

    pub fn intersection(ps: &[u64], n: u64) -> Result<Self> {
        Self::new(OddSetKind::PrimeIntersection(ps.to_vec()), n)
    }

    pub fn odd_set(&self) -> &OddSetSpec {
        &self.odd_set
    }

    pub fn kind(&self) -> &OddSetKind {
        self.odd_set.kind()
    }

    pub fn n(&self) -> u64 {
        self.odd_set.n()
    }

    pub fn include_zero(&self) -> bool {
        self.include_zero
    }

    pub fn vertex_count(&self) -> usize {
        self.n() as usize + usize::from(self.include_zero)
    }

    pub fn contains_vertex(&self, v: u64) -> bool {
        v % 2 == 0 && v <= 2 * self.n() && (v > 0 || self.include_zero)
    }

    /// The same kind at a different `n`.
    pub fn with_n(&self, n: u64) -> Result<Self> {
        Self::new(self.kind().clone(), n)
    }
}

/// Adjacency predicate: `(a+b)/2` and `|a-b|/2` both odd members of the odd set.
pub fn is_adjacent(a: u64, b: u64, spec: &GraphSpec) -> Result<bool> {
    if a == b {
        return Err(Error::domain(format!("a vertex is never adjacent to itself ({a})")));
    }
    for v in [a, b] {
        if !spec.contains_vertex(v) {
            return Err(Error::domain(format!(
                "{v} is not a vertex of the graph with n = {}",
                spec.n()
            )));
        }
    }
    let (s, d) = ((a + b) / 2, a.abs_diff(b) / 2);
    if s % 2 == 0 || d % 2 == 0 {
        return Ok(false);
    }
    Ok(spec.odd_set.contains(s)? && spec.odd_set.contains(d)?)
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_n: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_n: DEFAULT_MAX_N }
    }
}

/// A finite odd-even graph. Vertices are addressed by value in every public
/// method; the dense index is `v/2 - 1`, or `v/2` when 0 is a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenGraph {
    spec: GraphSpec,
    vertices: Vec<u64>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

pub fn build_graph(spec: &GraphSpec) -> Result<EvenGraph> {
    build_graph_with(spec, &BuildOptions::default())
}

/// Builds the graph by walking admissible differences from each vertex, so the
/// work is proportional to `n` times the size of the odd set.
pub fn build_graph_with(spec: &GraphSpec, options: &BuildOptions) -> Result<EvenGraph> {
    let n = spec.n();
    if n > options.max_n {
        return Err(Error::Capacity { n, max: options.max_n });
    }
    if n > u32::MAX as u64 / 2 {
        return Err(Error::Capacity { n, max: u32::MAX as u64 / 2 });
    }
    let table = spec.odd_set.table();
    // Differences d = |i - j| between half-vertices, ascending.
    let diffs: Vec<u64> = (1..=n).step_by(2).filter(|&d| table.admits(d)).collect();
    let lo = u64::from(!spec.include_zero);
    let vertices: Vec<u64> = (lo..=n).map(|i| 2 * i).collect();

    let mut offsets = Vec::with_capacity(vertices.len() + 1);
    let mut neighbors = Vec::new();
    offsets.push(0);
    for i in lo..=n {
        for &d in diffs.iter().rev() {
            if d <= i && i - d >= lo && table.admits(2 * i - d) {
                neighbors.push((i - d - lo) as u32);
            }
        }
        for &d in &diffs {
            if i + d > n {
                break;
            }
            if table.admits(2 * i + d) {
                neighbors.push((i + d - lo) as u32);
            }
        }
        offsets.push(neighbors.len());
    }
    Ok(EvenGraph {
        spec: spec.clone(),
        vertices,
        offsets,
        neighbors,
    })
}

/// Reference builder evaluating [`is_adjacent`] on every pair.
pub fn build_graph_naive(spec: &GraphSpec) -> Result<EvenGraph> {
    let lo = u64::from(!spec.include_zero);
    let vertices: Vec<u64> = (lo..=spec.n()).map(|i| 2 * i).collect();
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); vertices.len()];
    for (i, &a) in vertices.iter().enumerate() {
        for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
            if is_adjacent(a, b, spec)? {
                adjacency[i].push(j as u32);
                adjacency[j].push(i as u32);
            }
        }
    }
    Ok(EvenGraph::from_adjacency(spec.clone(), vertices, adjacency))
}

impl EvenGraph {
    fn from_adjacency(spec: GraphSpec, vertices: Vec<u64>, adjacency: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(vertices.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for mut row in adjacency {
            row.sort_unstable();
            neighbors.extend_from_slice(&row);
            offsets.push(neighbors.len());
        }
        EvenGraph {
            spec,
            vertices,
            offsets,
            neighbors,
        }
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn n(&self) -> u64 {
        self.spec.n()
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn contains(&self, v: u64) -> bool {
        self.spec.contains_vertex(v)
    }

    pub fn index_of(&self, v: u64) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        Some((v / 2) as usize - usize::from(!self.spec.include_zero))
    }

    pub(crate) fn require_index(&self, v: u64) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::domain(format!("{v} is not a vertex of the graph with n = {}", self.n())))
    }

    #[inline]
    pub fn vertex(&self, index: usize) -> u64 {
        self.vertices[index]
    }

    /// Sorted neighbor indices of the vertex at `index`.
    #[inline]
    pub fn neighbor_indices(&self, index: usize) -> &[u32] {
        &self.neighbors[self.offsets[index]..self.offsets[index + 1]]
    }

    /// Neighbors of `v` by value, ascending. Empty if `v` is not a vertex.
    pub fn neighbors(&self, v: u64) -> impl Iterator<Item = u64> + '_ {
        let slice = match self.index_of(v) {
            Some(i) => self.neighbor_indices(i),
            None => &[],
        };
        slice.iter().map(|&j| self.vertices[j as usize])
    }

    pub fn degree(&self, v: u64) -> usize {
        self.index_of(v).map_or(0, |i| self.neighbor_indices(i).len())
    }

    pub fn has_edge(&self, u: u64, v: u64) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.neighbor_indices(i).binary_search(&(j as u32)).is_ok(),
            _ => false,
        }
    }

    /// Every edge once as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.vertex_count()).flat_map(move |i| {
            self.neighbor_indices(i)
                .iter()
                .filter(move |&&j| j as usize > i)
                .map(move |&j| (self.vertices[i], self.vertices[j as usize]))
        })
    }

    /// Partite sets by residue mod 4: `(X, Y)` with `X ≡ 0` and `Y ≡ 2`.
    /// Vertex 0 is left out of both.
    pub fn partite_sets(&self) -> (Vec<u64>, Vec<u64>) {
        self.vertices
            .iter()
            .filter(|&&v| v > 0)
            .partition(|&&v| v % 4 == 0)
    }

    /// True when every edge joins the two mod-4 classes. Vertex 0 counts as
    /// `≡ 0`; its neighbors `2q` with `q` an odd prime are all `≡ 2`.
    pub fn is_bipartite_mod4(&self) -> bool {
        self.edges().all(|(u, v)| (u % 4 == 0) != (v % 4 == 0))
    }

    /// The subgraph induced on the vertices `<= 2m`.
    pub fn truncate(&self, m: u64) -> Result<EvenGraph> {
        if m == 0 || m > self.n() {
            return Err(Error::domain(format!("cannot truncate n = {} to {m}", self.n())));
        }
        let spec = self.spec.with_n(m)?;
        let keep = spec.vertex_count();
        let mut offsets = Vec::with_capacity(keep + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for i in 0..keep {
            let row = self.neighbor_indices(i);
            let cut = row.partition_point(|&j| (j as usize) < keep);
            neighbors.extend_from_slice(&row[..cut]);
            offsets.push(neighbors.len());
        }
        Ok(EvenGraph {
            spec,
            vertices: self.vertices[..keep].to_vec(),
            offsets,
            neighbors,
        })
    }

    /// Whether `self` and `other` have identical vertex and edge sets.
    pub fn same_edges(&self, other: &EvenGraph) -> bool {
        self.vertices == other.vertices
            && self.offsets == other.offsets
            && self.neighbors == other.neighbors
    }
}

/// Edge-set intersection of two graphs over the same vertex set.
///
/// The result is itself an odd-even graph whose odd set is the intersection of
/// the two odd sets; its spec records that.
pub fn intersect_graphs(g: &EvenGraph, h: &EvenGraph) -> Result<EvenGraph> {
    if g.vertices != h.vertices {
        return Err(Error::Mismatch(format!(
            "{} vertices (n = {}) vs {} vertices (n = {})",
            g.vertex_count(),
            g.n(),
            h.vertex_count(),
            h.n()
        )));
    }
    let n = g.n();
    let kind = match (g.spec.kind(), h.spec.kind()) {
        (a, b) if a == b => a.clone(),
        (a, b) => match (a.excluded_primes(), b.excluded_primes()) {
            (Some(pa), Some(pb)) => {
                let union: BTreeSet<u64> = pa.into_iter().chain(pb).collect();
                OddSetKind::PrimeIntersection(union.into_iter().collect())
            }
            _ => {
                let (ta, tb) = (g.spec.odd_set.table(), h.spec.odd_set.table());
                OddSetKind::Explicit(
                    (1..2 * n).step_by(2).filter(|&y| ta.admits(y) && tb.admits(y)).collect(),
                )
            }
        },
    };
    // Only Goldbach graphs carry vertex 0, and equal vertex sets force both to be Goldbach.
    let spec = GraphSpec::new(kind, n)?;
    let adjacency = (0..g.vertex_count())
        .map(|i| {
            let (a, b) = (g.neighbor_indices(i), h.neighbor_indices(i));
            let (mut x, mut y) = (0, 0);
            let mut row = Vec::new();
            while x < a.len() && y < b.len() {
                match a[x].cmp(&b[y]) {
                    std::cmp::Ordering::Less => x += 1,
                    std::cmp::Ordering::Greater => y += 1,
                    std::cmp::Ordering::Equal => {
                        row.push(a[x]);
                        x += 1;
                        y += 1;
                    }
                }
            }
            row
        })
        .collect();
    Ok(EvenGraph::from_adjacency(spec, g.vertices.clone(), adjacency))
}

/// Checks that `G(kind, m)` is the subgraph of `G(kind, n)` induced on `{.., 2m}`.
pub fn verify_induced(kind: &OddSetKind, m: u64, n: u64) -> Result<bool> {
    if m == 0 || m >= n {
        return Err(Error::domain(format!("need 1 <= m < n, got m = {m}, n = {n}")));
    }
    let big = build_graph(&GraphSpec::new(kind.clone(), n)?)?;
    let small = build_graph(&GraphSpec::new(kind.clone(), m)?)?;
    Ok(big.truncate(m)?.same_edges(&small))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::sieve_odd_primes;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pmm(p: u64, n: u64) -> EvenGraph {
        build_graph(&GraphSpec::pmm(p, n).unwrap()).unwrap()
    }

    fn g35(n: u64) -> EvenGraph {
        build_graph(&GraphSpec::intersection(&[3, 5], n).unwrap()).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let s3 = GraphSpec::pmm(3, 10).unwrap();
        assert!(is_adjacent(2, 8, &s3).unwrap());
        assert!(!is_adjacent(6, 12, &s3).unwrap());
        assert!(is_adjacent(4, 6, &GraphSpec::pmm(5, 3).unwrap()).unwrap());
        let s = GraphSpec::pmm(7, 20).unwrap();
        assert!(!is_adjacent(2, 22, &s).unwrap());
        assert!(!is_adjacent(2, 22, &GraphSpec::new(OddSetKind::NearGoldbach, 20).unwrap()).unwrap());
    }

    #[test]
    fn adjacency_domain_errors() {
        let s = GraphSpec::pmm(3, 4).unwrap();
        assert!(is_adjacent(4, 4, &s).is_err());
        assert!(is_adjacent(2, 10, &s).is_err());
        assert!(is_adjacent(0, 2, &s).is_err());
        assert!(is_adjacent(3, 2, &s).is_err());
        let g = GraphSpec::new(OddSetKind::Goldbach, 4).unwrap();
        assert!(is_adjacent(0, 6, &g).unwrap());
        assert!(!is_adjacent(0, 2, &g).unwrap());
    }

    #[test]
    fn build_examples() {
        let c4 = pmm(3, 4);
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert!(c4.vertices().iter().all(|&v| c4.degree(v) == 2));
        assert_eq!(c4.edges().collect::<Vec<_>>(), vec![(2, 4), (2, 8), (4, 6), (6, 8)]);

        let k33 = pmm(5, 6);
        assert_eq!(k33.edge_count(), 9);
        let (x, y) = k33.partite_sets();
        assert!(x.iter().all(|&a| y.iter().all(|&b| k33.has_edge(a, b))));

        assert_eq!(pmm(3, 18).edge_count(), 47);
    }

    #[test]
    fn fast_builder_matches_naive() {
        let kinds = [
            OddSetKind::PrimeMultipleMissing(3),
            OddSetKind::PrimeMultipleMissing(5),
            OddSetKind::PrimeMultipleMissing(11),
            OddSetKind::PrimeIntersection(vec![3, 5]),
            OddSetKind::PrimeIntersection(vec![3, 5, 7]),
            OddSetKind::NearGoldbach,
            OddSetKind::Goldbach,
            OddSetKind::Explicit([1, 3, 7, 21].into_iter().collect()),
        ];
        for kind in kinds {
            for n in [1, 2, 3, 4, 5, 13, 30, 77] {
                let spec = GraphSpec::new(kind.clone(), n).unwrap();
                let fast = build_graph(&spec).unwrap();
                let naive = build_graph_naive(&spec).unwrap();
                assert!(fast.same_edges(&naive), "{kind} n={n}");
            }
        }
    }

    #[test]
    fn goldbach_vertex_set_includes_zero() {
        let g = build_graph(&GraphSpec::new(OddSetKind::Goldbach, 2).unwrap()).unwrap();
        assert_eq!(g.vertices(), &[0, 2, 4]);
        assert_eq!(g.edge_count(), 0);
        let g = build_graph(&GraphSpec::new(OddSetKind::Goldbach, 10).unwrap()).unwrap();
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![6, 10, 14]);
        for n in [10, 57, 200] {
            let g = build_graph(&GraphSpec::new(OddSetKind::Goldbach, n).unwrap()).unwrap();
            assert!(g.is_bipartite_mod4());
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let spec = GraphSpec::pmm(3, 50).unwrap();
        let err = build_graph_with(&spec, &BuildOptions { max_n: 49 }).unwrap_err();
        assert!(matches!(err, Error::Capacity { n: 50, max: 49 }));
    }

    #[test]
    fn intersection_examples() {
        let g = intersect_graphs(&pmm(3, 12), &pmm(5, 12)).unwrap();
        assert!(g.same_edges(&pmm(3, 12)));
        assert_eq!(g.spec().kind(), &OddSetKind::PrimeIntersection(vec![3, 5]));

        let h = intersect_graphs(&pmm(3, 14), &pmm(5, 14)).unwrap();
        assert!(pmm(3, 14).has_edge(22, 28));
        assert!(!h.has_edge(22, 28));

        let g3 = pmm(3, 20);
        assert!(intersect_graphs(&g3, &g3).unwrap().same_edges(&g3));

        assert!(matches!(
            intersect_graphs(&pmm(3, 10), &pmm(5, 11)),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn intersection_matches_g35_build() {
        for n in 1..=200 {
            let g = intersect_graphs(&pmm(3, n), &pmm(5, n)).unwrap();
            assert!(g.same_edges(&g35(n)), "n = {n}");
        }
    }

    #[test]
    fn near_goldbach_is_prime_intersection() {
        let primes = sieve_odd_primes(64);
        for n in 13..=200u64 {
            let list: Vec<u64> = primes.iter().copied().filter(|&p| p * p < 2 * n).collect();
            let ng = build_graph(&GraphSpec::new(OddSetKind::NearGoldbach, n).unwrap()).unwrap();
            let inter = build_graph(&GraphSpec::intersection(&list, n).unwrap()).unwrap();
            assert!(ng.same_edges(&inter), "n = {n}");
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        assert!(verify_induced(&OddSetKind::PrimeMultipleMissing(3), 6, 18).unwrap());
        assert!(verify_induced(&OddSetKind::PrimeMultipleMissing(5), 10, 30).unwrap());
        assert!(verify_induced(&OddSetKind::PrimeIntersection(vec![3, 5]), 14, 44).unwrap());
        assert!(verify_induced(&OddSetKind::Goldbach, 5, 40).unwrap());
        assert!(verify_induced(&OddSetKind::PrimeMultipleMissing(3), 6, 6).is_err());
    }

    #[test]
    fn induced_subgraph_random_pairs() {
        let kinds = [
            OddSetKind::PrimeMultipleMissing(3),
            OddSetKind::PrimeMultipleMissing(5),
            OddSetKind::PrimeMultipleMissing(7),
            OddSetKind::PrimeIntersection(vec![3, 5]),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..240 {
            let kind = &kinds[rng.gen_range(0..kinds.len())];
            let n = rng.gen_range(2..=120);
            let m = rng.gen_range(1..n);
            assert!(verify_induced(kind, m, n).unwrap(), "{kind} m={m} n={n}");
        }
    }

    #[test]
    fn truncate_rejects_bad_sizes() {
        let g = pmm(3, 10);
        assert!(g.truncate(0).is_err());
        assert!(g.truncate(11).is_err());
        assert!(g.truncate(10).unwrap().same_edges(&g));
    }

    proptest! {
        #[test]
        fn graph_invariants(p_idx in 0usize..5, n in 1u64..160) {
            let p = [3u64, 5, 7, 11, 13][p_idx];
            let g = pmm(p, n);
            let degree_sum: usize = g.vertices().iter().map(|&v| g.degree(v)).sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
            prop_assert!(g.is_bipartite_mod4());
            for (u, v) in g.edges() {
                prop_assert!(g.has_edge(v, u));
                prop_assert!(u != v);
                prop_assert!(is_adjacent(u, v, g.spec()).unwrap());
            }
            for &v in g.vertices() {
                let row: Vec<u64> = g.neighbors(v).collect();
                prop_assert!(row.windows(2).all(|w| w[0] < w[1]));
            }
        }

        #[test]
        fn intersection_commutes(n in 1u64..120) {
            let a = intersect_graphs(&pmm(3, n), &pmm(7, n)).unwrap();
            let b = intersect_graphs(&pmm(7, n), &pmm(3, n)).unwrap();
            prop_assert!(a.same_edges(&b));
            prop_assert_eq!(a.spec(), b.spec());
        }
    }
}
