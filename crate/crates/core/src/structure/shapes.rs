//! Recognition of the small named graphs that the families start with.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::EvenGraph;
use crate::metrics::is_connected;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Empty,
    /// `P_k` on `k` vertices; `P_1 = K_1` and `P_2 = K_2`.
    Path(usize),
    Cycle(usize),
    /// A `k`-cycle with one extra vertex hanging off one cycle vertex.
    CycleWithPendant(usize),
    CompleteBipartite(usize, usize),
    /// `K_{a,b}` with `missing` pairwise disjoint edges removed.
    CompleteBipartiteMinusMatching { a: usize, b: usize, missing: usize },
    Other,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Shape::Empty => f.write_str("empty"),
            Shape::Path(1) => f.write_str("K_1"),
            Shape::Path(2) => f.write_str("K_2"),
            Shape::Path(k) => write!(f, "P_{k}"),
            Shape::Cycle(k) => write!(f, "C_{k}"),
            Shape::CycleWithPendant(k) => write!(f, "C_{k} plus a pendant vertex"),
            Shape::CompleteBipartite(a, b) => write!(f, "K_{{{a},{b}}}"),
            Shape::CompleteBipartiteMinusMatching { a, b, missing: 1 } => {
                write!(f, "K_{{{a},{b}}} minus one edge")
            }
            Shape::CompleteBipartiteMinusMatching { a, b, missing } => {
                write!(f, "K_{{{a},{b}}} minus {missing} disjoint edges")
            }
            Shape::Other => f.write_str("other"),
        }
    }
}

/// Classifies a graph by degree sequence and explicit edge checks. Earlier
/// variants win, so `C_4` is reported rather than `K_{2,2}`.
pub fn classify(graph: &EvenGraph) -> Shape {
    let v = graph.vertex_count();
    let e = graph.edge_count();
    if v == 0 {
        return Shape::Empty;
    }
    let degrees: Vec<usize> = graph.vertices().iter().map(|&u| graph.degree(u)).collect();
    let connected = is_connected(graph);
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    if connected && e + 1 == v && max_degree <= 2 {
        return Shape::Path(v);
    }
    if connected && e == v && degrees.iter().all(|&d| d == 2) {
        return Shape::Cycle(v);
    }
    if connected && e == v && v >= 4 {
        let ones = degrees.iter().filter(|&&d| d == 1).count();
        let threes = degrees.iter().filter(|&&d| d == 3).count();
        if ones == 1 && threes == 1 && degrees.iter().all(|&d| (1..=3).contains(&d)) {
            return Shape::CycleWithPendant(v - 1);
        }
    }
    if graph.spec().include_zero() || !graph.is_bipartite_mod4() {
        return Shape::Other;
    }
    let (x, y) = graph.partite_sets();
    let (a, b) = (x.len().min(y.len()), x.len().max(y.len()));
    if a == 0 {
        return Shape::Other;
    }
    if e == a * b {
        return Shape::CompleteBipartite(a, b);
    }
    let missing = a * b - e;
    let misses_one = |side: &[u64], other: usize| side.iter().all(|&u| graph.degree(u) + 1 >= other);
    if misses_one(&x, y.len()) && misses_one(&y, x.len()) {
        return Shape::CompleteBipartiteMinusMatching { a, b, missing };
    }
    Shape::Other
}
