//! Brute-force reference implementations for small instances.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::EvenGraph;
use crate::hamilton::{verify_certificate, HamCertificate};
use crate::metrics::Extent;
use crate::structure::canonical_cycle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_nodes: 50_000_000,
            max_time: Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    pub fn new(max_nodes: u64, max_time: Duration) -> Result<Self> {
        if max_nodes == 0 || max_time.is_zero() {
            return Err(Error::domain("oracle budgets must be positive"));
        }
        Ok(OracleBudget { max_nodes, max_time })
    }
}

struct Meter {
    budget: OracleBudget,
    started: Instant,
    expanded: u64,
}

impl Meter {
    fn new(budget: OracleBudget) -> Self {
        Meter {
            budget,
            started: Instant::now(),
            expanded: 0,
        }
    }

    fn tick(&mut self) -> bool {
        self.expanded += 1;
        self.expanded <= self.budget.max_nodes
            && (self.expanded % 4096 != 0 || self.started.elapsed() <= self.budget.max_time)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamSearch {
    Found(HamCertificate),
    /// The search was exhaustive and found no Hamiltonian cycle.
    None,
    BudgetExhausted { expanded: u64 },
}

/// Backtracking search for a Hamiltonian cycle. Neighbors are tried in order
/// of increasing degree. Bipartite graphs with unequal sides are rejected
/// without search.
pub fn brute_ham_cycle(graph: &EvenGraph, budget: OracleBudget) -> HamSearch {
    let v = graph.vertex_count();
    if v < 3 {
        return HamSearch::None;
    }
    if graph.is_bipartite_mod4() {
        let x = graph.vertices().iter().filter(|&&u| u % 4 == 0).count();
        if 2 * x != v {
            return HamSearch::None;
        }
    }
    let degree: Vec<usize> = (0..v).map(|i| graph.neighbor_indices(i).len()).collect();
    if degree.iter().any(|&d| d < 2) {
        return HamSearch::None;
    }
    let mut order: Vec<Vec<usize>> = (0..v)
        .map(|i| graph.neighbor_indices(i).iter().map(|&j| j as usize).collect())
        .collect();
    for list in &mut order {
        list.sort_by_key(|&j| (degree[j], j));
    }
    let start = (0..v).min_by_key(|&i| (degree[i], i)).unwrap();
    let mut path = vec![start];
    let mut used = vec![false; v];
    used[start] = true;
    let mut meter = Meter::new(budget);
    match extend(&order, start, &mut path, &mut used, &mut meter) {
        Some(true) => {
            let seq = path.iter().map(|&i| graph.vertex(i)).collect();
            let cert = verify_certificate(graph, HamCertificate::new(graph.spec().clone(), seq, true));
            debug_assert!(cert.is_verified());
            HamSearch::Found(cert)
        }
        Some(false) => HamSearch::None,
        None => HamSearch::BudgetExhausted {
            expanded: meter.expanded,
        },
    }
}

/// `Some(true)` on success, `Some(false)` when exhausted, `None` when out of budget.
fn extend(order: &[Vec<usize>], start: usize, path: &mut Vec<usize>, used: &mut [bool], meter: &mut Meter) -> Option<bool> {
    if !meter.tick() {
        return None;
    }
    let last = *path.last().unwrap();
    if path.len() == used.len() {
        return Some(order[last].contains(&start));
    }
    for &next in &order[last] {
        if used[next] {
            continue;
        }
        used[next] = true;
        path.push(next);
        match extend(order, start, path, used, meter) {
            Some(false) => {}
            other => return other,
        }
        path.pop();
        used[next] = false;
    }
    Some(false)
}

/// All-pairs distances by Floyd-Warshall, indexed like `graph.vertices()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub vertices: Vec<u64>,
    pub distances: Vec<Vec<Option<u32>>>,
}

impl DistanceMatrix {
    pub fn get(&self, u: u64, v: u64) -> Option<u32> {
        let i = self.vertices.binary_search(&u).ok()?;
        let j = self.vertices.binary_search(&v).ok()?;
        self.distances[i][j]
    }

    /// The largest entry; infinite if any pair is unreachable.
    pub fn max_entry(&self) -> Extent {
        let mut best = 0;
        for row in &self.distances {
            for d in row {
                match d {
                    Some(d) => best = best.max(*d),
                    None => return Extent::Infinite,
                }
            }
        }
        Extent::Finite(best)
    }
}

pub fn brute_all_pairs(graph: &EvenGraph) -> DistanceMatrix {
    let v = graph.vertex_count();
    const INF: u32 = u32::MAX / 2;
    let mut d = vec![vec![INF; v]; v];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
        for &j in graph.neighbor_indices(i) {
            row[j as usize] = 1;
        }
    }
    for k in 0..v {
        for i in 0..v {
            let dik = d[i][k];
            if dik == INF {
                continue;
            }
            for j in 0..v {
                let through = dik + d[k][j];
                if through < d[i][j] {
                    d[i][j] = through;
                }
            }
        }
    }
    DistanceMatrix {
        vertices: graph.vertices().to_vec(),
        distances: d
            .into_iter()
            .map(|row| row.into_iter().map(|x| (x < INF).then_some(x)).collect())
            .collect(),
    }
}

/// Every induced cycle with exactly `length` vertices, canonicalized.
///
/// Grows vertex sequences from each possible smallest vertex and keeps those
/// whose vertex set induces exactly the cycle edges.
pub fn brute_induced_cycles(graph: &EvenGraph, length: usize, budget: OracleBudget) -> Result<BTreeSet<Vec<u64>>> {
    let mut found = BTreeSet::new();
    if length < 3 {
        return Ok(found);
    }
    let mut meter = Meter::new(budget);
    let verts = graph.vertices();
    for &start in verts {
        let mut seq = vec![start];
        grow(graph, length, &mut seq, &mut found, &mut meter)?;
    }
    Ok(found)
}

fn grow(
    graph: &EvenGraph,
    length: usize,
    seq: &mut Vec<u64>,
    found: &mut BTreeSet<Vec<u64>>,
    meter: &mut Meter,
) -> Result<()> {
    if !meter.tick() {
        return Err(Error::Budget {
            expanded: meter.expanded,
        });
    }
    if seq.len() == length {
        if graph.has_edge(seq[length - 1], seq[0]) && is_induced_cycle(graph, seq) {
            found.insert(canonical_cycle(seq));
        }
        return Ok(());
    }
    let start = seq[0];
    let last = *seq.last().unwrap();
    let candidates: Vec<u64> = graph.neighbors(last).filter(|&w| w > start && !seq.contains(&w)).collect();
    let inner = 1.min(seq.len() - 1)..seq.len() - 1;
    for w in candidates {
        // a chord to any earlier vertex other than the start can never be repaired
        if seq[inner.clone()].iter().any(|&u| graph.has_edge(u, w)) {
            continue;
        }
        seq.push(w);
        grow(graph, length, seq, found, meter)?;
        seq.pop();
    }
    Ok(())
}

fn is_induced_cycle(graph: &EvenGraph, cycle: &[u64]) -> bool {
    let k = cycle.len();
    let mut edges = 0;
    for i in 0..k {
        for j in i + 1..k {
            if graph.has_edge(cycle[i], cycle[j]) {
                edges += 1;
            }
        }
    }
    edges == k
}
