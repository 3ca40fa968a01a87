//! Hamiltonian cycle and path certificates for `G(3,n)`, `G(5,n)` and
//! `G(3,5,n)`, with verification against built graphs.

mod construct;
pub mod fixtures;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EvenGraph, GraphSpec};
use crate::numeric::OddSetKind;

pub use construct::{
    extend_g35_parts, g35_split, ham_cycle_g3, ham_cycle_g35, ham_cycle_g5, split_g35_cycle, G35Parts, G35Split,
};

/// A graph family with a Hamiltonian constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    G3,
    G5,
    G35,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::G3, Family::G5, Family::G35];

    pub fn kind(self) -> OddSetKind {
        match self {
            Family::G3 => OddSetKind::PrimeMultipleMissing(3),
            Family::G5 => OddSetKind::PrimeMultipleMissing(5),
            Family::G35 => OddSetKind::PrimeIntersection(vec![3, 5]),
        }
    }

    pub fn spec(self, n: u64) -> Result<GraphSpec> {
        GraphSpec::new(self.kind(), n)
    }

    pub fn from_kind(kind: &OddSetKind) -> Option<Family> {
        Family::ALL.into_iter().find(|f| &f.kind() == kind)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::G3 => "pmm3",
            Family::G5 => "pmm5",
            Family::G35 => "g35",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pmm3" | "g3" => Ok(Family::G3),
            "pmm5" | "g5" => Ok(Family::G5),
            "g35" => Ok(Family::G35),
            _ => Err(Error::domain(format!("no Hamiltonian constructor for {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    /// The vertex at the reported position already appeared earlier.
    Repeat(u64),
    /// A vertex of the graph never appears; position is the sequence length.
    Missing(u64),
    /// The vertex at the reported position is not adjacent to its predecessor.
    NonAdjacent(u64, u64),
    /// The last vertex is not adjacent to the first.
    NotClosed,
    /// The vertex at the reported position is not in the graph.
    Foreign(u64),
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::Repeat(v) => write!(f, "repeat of {v}"),
            FailureReason::Missing(v) => write!(f, "missing {v}"),
            FailureReason::NonAdjacent(u, v) => write!(f, "non-adjacent {u} and {v}"),
            FailureReason::NotClosed => f.write_str("not closed"),
            FailureReason::Foreign(v) => write!(f, "{v} is not a vertex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Unverified,
    Verified,
    Failed { reason: FailureReason, position: usize },
}

/// An ordered vertex sequence claimed to be a Hamiltonian cycle (`closed`) or
/// path. Closed sequences do not repeat their first vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamCertificate {
    pub spec: GraphSpec,
    pub sequence: Vec<u64>,
    pub closed: bool,
    pub status: Status,
}

impl HamCertificate {
    pub fn new(spec: GraphSpec, sequence: Vec<u64>, closed: bool) -> Self {
        HamCertificate {
            spec,
            sequence,
            closed,
            status: Status::Unverified,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Comma-separated sequence; closed cycles repeat the first vertex.
    pub fn to_text(&self) -> String {
        let mut items: Vec<String> = self.sequence.iter().map(u64::to_string).collect();
        if self.closed {
            if let Some(first) = self.sequence.first() {
                items.push(first.to_string());
            }
        }
        items.join(",")
    }
}

/// Checks a certificate against `graph` and records the outcome in its status.
pub fn verify_certificate(graph: &EvenGraph, mut cert: HamCertificate) -> HamCertificate {
    cert.status = check_sequence(graph, &cert.sequence, cert.closed);
    cert
}

fn check_sequence(graph: &EvenGraph, seq: &[u64], closed: bool) -> Status {
    let fail = |reason, position| Status::Failed { reason, position };
    let mut seen = vec![false; graph.vertex_count()];
    for (pos, &v) in seq.iter().enumerate() {
        let Some(i) = graph.index_of(v) else {
            return fail(FailureReason::Foreign(v), pos);
        };
        if seen[i] {
            return fail(FailureReason::Repeat(v), pos);
        }
        seen[i] = true;
        if pos > 0 && !graph.has_edge(seq[pos - 1], v) {
            return fail(FailureReason::NonAdjacent(seq[pos - 1], v), pos);
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return fail(FailureReason::Missing(graph.vertex(i)), seq.len());
    }
    if closed && (seq.len() < 3 || !graph.has_edge(seq[seq.len() - 1], seq[0])) {
        return fail(FailureReason::NotClosed, seq.len());
    }
    Status::Verified
}

/// The constructed Hamiltonian cycle of `family` at even `n >= 4`.
pub fn ham_cycle(family: Family, n: u64) -> Result<HamCertificate> {
    match family {
        Family::G3 => ham_cycle_g3(n),
        Family::G5 => ham_cycle_g5(n),
        Family::G35 => ham_cycle_g35(n),
    }
}

/// A Hamiltonian path of `family` at any `n >= 1`.
///
/// Even `n` opens the cycle. Odd `n` takes the cycle for `n + 1`, removes
/// `2(n+1)` and starts right after it; this is a path in `G(n)` because
/// `G(n)` is the subgraph of `G(n+1)` induced on the smaller vertices.
pub fn ham_path(family: Family, n: u64) -> Result<HamCertificate> {
    if n == 0 {
        return Err(Error::domain("a Hamiltonian path needs n >= 1"));
    }
    let spec = family.spec(n)?;
    let ascending = || (1..=n).map(|i| 2 * i).collect::<Vec<u64>>();
    let sequence = match (family, n) {
        (_, 1..=3) => ascending(),
        (Family::G5, 5 | 7) => ascending(),
        (_, n) if n % 2 == 0 => ham_cycle(family, n)?.sequence,
        (_, n) => {
            let cycle = ham_cycle(family, n + 1)?.sequence;
            let drop = 2 * (n + 1);
            let at = cycle.iter().position(|&v| v == drop).expect("cycle covers 2(n+1)");
            cycle[at + 1..].iter().chain(&cycle[..at]).copied().collect()
        }
    };
    Ok(HamCertificate::new(spec, sequence, false))
}

/// Vertices of the sequence, for quick set comparisons.
pub fn vertex_set(seq: &[u64]) -> BTreeSet<u64> {
    seq.iter().copied().collect()
}
