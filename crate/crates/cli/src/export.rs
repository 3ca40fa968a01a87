use std::fmt::Write;

use goldbach_lab::structure::{biadjacency, LayoutRule};
use goldbach_lab::{EvenGraph, OddSetKind};

use crate::CliError;

/// DOT with `X` (`≡ 0 mod 4`, including 0) and `Y` ranked separately.
pub fn dot(g: &EvenGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{} n={}\" {{", g.spec().kind(), g.n());
    let (x, y): (Vec<u64>, Vec<u64>) = g.vertices().iter().partition(|&&v| v % 4 == 0);
    for (name, side) in [("X", &x), ("Y", &y)] {
        let list: Vec<String> = side.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "  subgraph {name} {{ rank=same; {} }}", list.join("; "));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// `u,v` per edge, `u < v`, ascending.
pub fn edge_csv(g: &EvenGraph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u},{v}");
    }
    out
}

/// Residue-block order for prime-missing graphs, natural order otherwise.
pub fn biadjacency_text(g: &EvenGraph) -> Result<String, CliError> {
    let rule = match g.spec().kind() {
        OddSetKind::PrimeMultipleMissing(_) => LayoutRule::ResidueBlocks,
        _ => LayoutRule::Natural,
    };
    Ok(biadjacency(g, rule)?.to_text())
}
