//! Girth, short-cycle witnesses and the induced-cycle census.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::EvenGraph;
use crate::metrics::Extent;

/// Default expansion budget for [`induced_cycle_census`].
pub const DEFAULT_CENSUS_BUDGET: u64 = 10_000_000;

struct BfsTree {
    dist: Vec<u32>,
    parent: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

/// BFS from `s`, reporting the shortest cycle closed by a non-tree edge as
/// `(length, u, w)`. Stops once no shorter cycle than `best` can appear.
fn shortest_from(graph: &EvenGraph, s: usize, best: u32, tree: &mut BfsTree) -> Option<(u32, usize, usize)> {
    tree.dist.fill(UNSEEN);
    tree.dist[s] = 0;
    tree.parent[s] = UNSEEN;
    let mut queue = VecDeque::from([s]);
    let mut found: Option<(u32, usize, usize)> = None;
    while let Some(u) = queue.pop_front() {
        let du = tree.dist[u];
        let bound = found.map_or(best, |f| f.0.min(best));
        if 2 * du + 1 >= bound {
            break;
        }
        for &w in graph.neighbor_indices(u) {
            let w = w as usize;
            if tree.dist[w] == UNSEEN {
                tree.dist[w] = du + 1;
                tree.parent[w] = u as u32;
                queue.push_back(w);
            } else if tree.parent[u] != w as u32 {
                let len = du + tree.dist[w] + 1;
                if found.map_or(true, |f| len < f.0) {
                    found = Some((len, u, w));
                }
            }
        }
    }
    found
}

fn trace(tree: &BfsTree, mut v: usize) -> Vec<usize> {
    let mut out = vec![v];
    while tree.parent[v] != UNSEEN {
        v = tree.parent[v] as usize;
        out.push(v);
    }
    out
}

/// Length of a shortest cycle and one cycle achieving it.
pub fn girth_with_witness(graph: &EvenGraph) -> (Extent, Option<Vec<u64>>) {
    let count = graph.vertex_count();
    let floor = if graph.is_bipartite_mod4() { 4 } else { 3 };
    let mut tree = BfsTree {
        dist: vec![UNSEEN; count],
        parent: vec![UNSEEN; count],
    };
    let mut best = u32::MAX;
    let mut witness = None;
    for s in 0..count {
        if let Some((len, u, w)) = shortest_from(graph, s, best, &mut tree) {
            let a = trace(&tree, u);
            let b = trace(&tree, w);
            let mut cycle: Vec<usize> = a.iter().rev().copied().collect();
            cycle.extend(b.iter().take(b.len() - 1));
            let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
            if len < best && distinct.len() == cycle.len() && cycle.len() == len as usize {
                best = len;
                witness = Some(cycle.iter().map(|&i| graph.vertex(i)).collect());
            }
        }
        if best == floor {
            break;
        }
    }
    if best == u32::MAX {
        (Extent::Infinite, None)
    } else {
        (Extent::Finite(best), witness)
    }
}

pub fn girth(graph: &EvenGraph) -> Extent {
    girth_with_witness(graph).0
}

/// A 4-cycle `(v, a, w, b)` through `v`, if one exists.
pub fn four_cycle_through(graph: &EvenGraph, v: u64) -> Option<[u64; 4]> {
    let nv: Vec<u64> = graph.neighbors(v).collect();
    for (i, &a) in nv.iter().enumerate() {
        for &b in &nv[i + 1..] {
            if let Some(w) = graph.neighbors(a).find(|&w| w != v && graph.has_edge(w, b)) {
                return Some([v, a, w, b]);
            }
        }
    }
    None
}

/// Depth-first growth of induced paths rooted at their smallest vertex.
/// `visit` is called with every induced cycle found (each twice, once per
/// direction) and may stop the search by returning `false`.
pub(crate) fn walk_induced_cycles(
    graph: &EvenGraph,
    max_len: usize,
    budget: u64,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    let count = graph.vertex_count();
    let mut expanded = 0u64;
    // blocked[v] counts path vertices other than the tip that are adjacent to v.
    let mut blocked = vec![0u32; count];
    let mut on_path = vec![false; count];
    let mut path: Vec<usize> = Vec::with_capacity(max_len);

    struct Ctx<'a, F> {
        graph: &'a EvenGraph,
        max_len: usize,
        budget: u64,
        expanded: &'a mut u64,
        blocked: &'a mut [u32],
        on_path: &'a mut [bool],
        path: &'a mut Vec<usize>,
        visit: &'a mut F,
    }

    fn extend<F: FnMut(&[usize]) -> bool>(cx: &mut Ctx<'_, F>) -> Result<bool> {
        *cx.expanded += 1;
        if *cx.expanded > cx.budget {
            return Err(Error::Budget { expanded: *cx.expanded });
        }
        let s = cx.path[0];
        let tip = *cx.path.last().unwrap();
        let len = cx.path.len();
        for &w in cx.graph.neighbor_indices(tip) {
            let w = w as usize;
            if w <= s || cx.on_path[w] {
                continue;
            }
            // Adjacency to the root is allowed only when it closes the cycle.
            let root_adjacent = len >= 2 && cx.graph.neighbor_indices(w).binary_search(&(s as u32)).is_ok();
            let inner = cx.blocked[w] - u32::from(root_adjacent && len >= 2);
            if inner > 0 {
                continue;
            }
            if root_adjacent {
                cx.path.push(w);
                let keep_going = (cx.visit)(cx.path);
                cx.path.pop();
                if !keep_going {
                    return Ok(false);
                }
                continue;
            }
            if len + 1 >= cx.max_len {
                continue;
            }
            // The tip becomes an inner vertex once w is appended.
            for &z in cx.graph.neighbor_indices(tip) {
                cx.blocked[z as usize] += 1;
            }
            cx.on_path[w] = true;
            cx.path.push(w);
            let result = extend(cx);
            cx.path.pop();
            cx.on_path[w] = false;
            for &z in cx.graph.neighbor_indices(tip) {
                cx.blocked[z as usize] -= 1;
            }
            if !result? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    for s in 0..count {
        path.clear();
        path.push(s);
        on_path[s] = true;
        let mut cx = Ctx {
            graph,
            max_len,
            budget,
            expanded: &mut expanded,
            blocked: &mut blocked,
            on_path: &mut on_path,
            path: &mut path,
            visit: &mut visit,
        };
        let outcome = extend(&mut cx);
        on_path[s] = false;
        if !outcome? {
            break;
        }
    }
    Ok(())
}

/// The set of lengths `3 ..= max_len` at which the graph has an induced cycle.
pub fn induced_cycle_census(graph: &EvenGraph, max_len: usize) -> Result<BTreeSet<usize>> {
    induced_cycle_census_with_budget(graph, max_len, DEFAULT_CENSUS_BUDGET)
}

pub fn induced_cycle_census_with_budget(
    graph: &EvenGraph,
    max_len: usize,
    budget: u64,
) -> Result<BTreeSet<usize>> {
    let mut lengths = BTreeSet::new();
    walk_induced_cycles(graph, max_len, budget, |cycle| {
        lengths.insert(cycle.len());
        true
    })?;
    Ok(lengths)
}

/// Induced cycles of exactly `len` vertices, canonicalized and deduplicated.
pub fn induced_cycles_of_length(graph: &EvenGraph, len: usize, budget: u64) -> Result<BTreeSet<Vec<u64>>> {
    let mut found = BTreeSet::new();
    walk_induced_cycles(graph, len, budget, |cycle| {
        if cycle.len() == len {
            let values: Vec<u64> = cycle.iter().map(|&i| graph.vertex(i)).collect();
            found.insert(canonical_cycle(&values));
        }
        true
    })?;
    Ok(found)
}

/// Rotates a cycle to start at its smallest vertex and orients it toward the
/// smaller of that vertex's two cycle neighbors.
pub fn canonical_cycle(cycle: &[u64]) -> Vec<u64> {
    let k = cycle.len();
    if k == 0 {
        return vec![];
    }
    let (start, _) = cycle.iter().enumerate().min_by_key(|&(_, v)| *v).unwrap();
    let forward: Vec<u64> = (0..k).map(|t| cycle[(start + t) % k]).collect();
    let backward: Vec<u64> = (0..k).map(|t| cycle[(start + k - t) % k]).collect();
    if k > 1 && backward[1] < forward[1] {
        backward
    } else {
        forward
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphSpec};
    use crate::numeric::OddSetKind;

    fn pmm(p: u64, n: u64) -> EvenGraph {
        build_graph(&GraphSpec::pmm(p, n).unwrap()).unwrap()
    }

    #[test]
    fn girth_examples() {
        let (g, w) = girth_with_witness(&pmm(3, 4));
        assert_eq!(g, Extent::Finite(4));
        assert_eq!(canonical_cycle(&w.unwrap()), vec![2, 4, 6, 8]);
        assert_eq!(girth(&pmm(3, 3)), Extent::Infinite);
        assert_eq!(girth(&pmm(3, 1)), Extent::Infinite);
        assert_eq!(girth(&pmm(5, 10)), Extent::Finite(4));
    }

    #[test]
    fn girth_of_goldbach_graph_with_zero() {
        let g = build_graph(&GraphSpec::new(OddSetKind::Goldbach, 30).unwrap()).unwrap();
        let (len, w) = girth_with_witness(&g);
        let w = w.unwrap();
        assert_eq!(len, Extent::Finite(w.len() as u32));
        for i in 0..w.len() {
            assert!(g.has_edge(w[i], w[(i + 1) % w.len()]));
        }
    }

    #[test]
    fn every_vertex_on_a_four_cycle() {
        for n in 6..=60 {
            let g = pmm(3, n);
            for &v in g.vertices() {
                let [a, b, c, d] = four_cycle_through(&g, v).unwrap_or_else(|| panic!("n={n} v={v}"));
                assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a));
            }
        }
        assert!(four_cycle_through(&pmm(3, 5), 10).is_none());
    }

    #[test]
    fn census_examples() {
        let six = induced_cycles_of_length(&pmm(3, 8), 6, DEFAULT_CENSUS_BUDGET).unwrap();
        assert!(six.contains(&canonical_cycle(&[2, 8, 6, 16, 10, 12])));
        assert_eq!(induced_cycle_census(&pmm(3, 8), 10).unwrap(), BTreeSet::from([4, 6]));
        assert_eq!(induced_cycle_census(&pmm(3, 20), 12).unwrap(), BTreeSet::from([4, 6]));
        assert_eq!(induced_cycle_census(&pmm(3, 4), 8).unwrap(), BTreeSet::from([4]));
        let four = induced_cycles_of_length(&pmm(3, 4), 4, DEFAULT_CENSUS_BUDGET).unwrap();
        assert_eq!(four, BTreeSet::from([vec![2, 4, 6, 8]]));
    }

    #[test]
    fn census_of_small_shapes() {
        let spec = GraphSpec::new(OddSetKind::Explicit([1].into_iter().collect()), 10).unwrap();
        assert!(induced_cycle_census(&build_graph(&spec).unwrap(), 10).unwrap().is_empty());
        assert!(induced_cycle_census(&pmm(3, 3), 10).unwrap().is_empty());
        assert_eq!(induced_cycle_census(&pmm(5, 6), 10).unwrap(), BTreeSet::from([4]));
    }

    #[test]
    fn first_induced_six_cycle_appears_at_seven() {
        assert_eq!(induced_cycle_census(&pmm(3, 6), 12).unwrap(), BTreeSet::from([4]));
        assert_eq!(induced_cycle_census(&pmm(3, 7), 12).unwrap(), BTreeSet::from([4, 6]));
        let six = induced_cycles_of_length(&pmm(3, 7), 6, DEFAULT_CENSUS_BUDGET).unwrap();
        assert_eq!(six, BTreeSet::from([vec![4, 6, 8, 14, 12, 10]]));
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let err = induced_cycle_census_with_budget(&pmm(3, 30), 12, 50).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical_cycle(&[6, 8, 2, 4]), vec![2, 4, 6, 8]);
        assert_eq!(canonical_cycle(&[6, 4, 2, 8]), vec![2, 4, 6, 8]);
        assert_eq!(canonical_cycle(&[]), Vec::<u64>::new());
    }
}
