//! Explicit Hamiltonian cycles stored as text, one `family:n:v1,...,vk`
//! record per line. Cycles omit the repeated final vertex.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::build_graph;
use crate::hamilton::{ham_cycle, verify_certificate, Family, HamCertificate, Status};

const BUILTIN: &str = include_str!("../../data/fixtures.txt");

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixtureSet {
    rows: BTreeMap<(Family, u64), Vec<u64>>,
}

impl FixtureSet {
    /// Parses fixture text. `path` only labels errors.
    pub fn parse(text: &str, path: Option<&Path>) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            path: path.map(Path::to_path_buf),
            line,
            message,
        };
        let mut rows = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.splitn(3, ':');
            let (Some(family), Some(n), Some(seq)) = (fields.next(), fields.next(), fields.next()) else {
                return Err(err(line_no, "expected family:n:v1,v2,...".into()));
            };
            let family: Family = family
                .trim()
                .parse()
                .map_err(|_| err(line_no, format!("unknown family {:?}", family.trim())))?;
            let n: u64 = n
                .trim()
                .parse()
                .map_err(|_| err(line_no, format!("bad n {:?}", n.trim())))?;
            let sequence = seq
                .split(',')
                .map(|v| v.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| err(line_no, format!("bad vertex list: {e}")))?;
            if rows.insert((family, n), sequence).is_some() {
                return Err(err(line_no, format!("duplicate record {family}:{n}")));
            }
        }
        Ok(FixtureSet { rows })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, Some(path))
    }

    pub fn get(&self, family: Family, n: u64) -> Option<&[u64]> {
        self.rows.get(&(family, n)).map(Vec::as_slice)
    }

    pub fn insert(&mut self, family: Family, n: u64, sequence: Vec<u64>) {
        self.rows.insert((family, n), sequence);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Family, u64, &[u64])> {
        self.rows.iter().map(|(&(f, n), s)| (f, n, s.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (family, n, seq) in self.iter() {
            let items: Vec<String> = seq.iter().map(u64::to_string).collect();
            out.push_str(&format!("{family}:{n}:{}\n", items.join(",")));
        }
        out
    }
}

/// The cycles shipped with the crate.
pub fn builtin_fixtures() -> &'static FixtureSet {
    static SET: OnceLock<FixtureSet> = OnceLock::new();
    SET.get_or_init(|| FixtureSet::parse(BUILTIN, None).expect("builtin fixtures parse"))
}

/// Rotates `cycle` to start at `reference[0]` and reverses it if that makes
/// the second vertices agree. `None` if the start vertex is absent.
pub fn normalize(cycle: &[u64], reference: &[u64]) -> Option<Vec<u64>> {
    let start = *reference.first()?;
    let at = cycle.iter().position(|&v| v == start)?;
    let mut rotated: Vec<u64> = cycle[at..].iter().chain(&cycle[..at]).copied().collect();
    if rotated.len() > 2 && reference.get(1) != rotated.get(1) {
        rotated[1..].reverse();
    }
    Some(rotated)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionDiff {
    pub position: usize,
    pub expected: Option<u64>,
    pub found: Option<u64>,
}

/// Positions where `candidate`, normalized against `reference`, differs.
pub fn cycle_diff(reference: &[u64], candidate: &[u64]) -> Vec<PositionDiff> {
    let normalized = normalize(candidate, reference).unwrap_or_else(|| candidate.to_vec());
    (0..reference.len().max(normalized.len()))
        .filter_map(|i| {
            let (e, f) = (reference.get(i).copied(), normalized.get(i).copied());
            (e != f).then_some(PositionDiff {
                position: i,
                expected: e,
                found: f,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub family: Family,
    pub n: u64,
    pub status: Status,
    /// Differences between the constructor and the fixture; `None` when
    /// the constructor is undefined at `n`.
    pub constructor_diff: Option<Vec<PositionDiff>>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.status == Status::Verified && self.constructor_diff.as_ref().map_or(true, Vec::is_empty)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub outcomes: Vec<FixtureOutcome>,
}

impl FixtureReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(FixtureOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FixtureOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

/// Verifies each fixture against its graph and compares it with the
/// constructor output at the same `n`.
pub fn verify_fixtures(set: &FixtureSet) -> Result<FixtureReport> {
    let mut outcomes = Vec::with_capacity(set.len());
    for (family, n, seq) in set.iter() {
        let spec = family.spec(n)?;
        let graph = build_graph(&spec)?;
        let status = verify_certificate(&graph, HamCertificate::new(spec, seq.to_vec(), true)).status;
        let constructor_diff = ham_cycle(family, n).ok().map(|c| cycle_diff(seq, &c.sequence));
        outcomes.push(FixtureOutcome {
            family,
            n,
            status,
            constructor_diff,
        });
    }
    Ok(FixtureReport { outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamilton::FailureReason;

    #[test]
    fn builtin_counts() {
        let set = builtin_fixtures();
        let count = |f| set.iter().filter(|r| r.0 == f).count();
        assert_eq!(count(Family::G3), 19);
        assert_eq!(count(Family::G5), 18);
        assert_eq!(count(Family::G35), 31);
        assert_eq!(FixtureSet::parse(&set.to_text(), None).unwrap(), *set);
    }

    #[test]
    fn builtin_all_pass() {
        let report = verify_fixtures(builtin_fixtures()).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn normalization() {
        let reference = [2, 8, 6, 4];
        assert_eq!(normalize(&[6, 4, 2, 8], &reference).unwrap(), reference);
        assert_eq!(normalize(&[4, 6, 8, 2], &reference).unwrap(), reference);
        assert!(normalize(&[4, 6, 8], &[10]).is_none());
        assert!(cycle_diff(&reference, &[8, 6, 4, 2]).is_empty());
    }

    #[test]
    fn swapped_vertex_is_reported() {
        let mut set = FixtureSet::default();
        set.insert(Family::G3, 6, vec![2, 8, 6, 10, 4, 12]);
        let report = verify_fixtures(&set).unwrap();
        let outcome = &report.outcomes[0];
        assert!(!outcome.passed());
        assert_eq!(
            outcome.status,
            Status::Failed { reason: FailureReason::NonAdjacent(6, 10), position: 3 }
        );
        let diff = outcome.constructor_diff.as_ref().unwrap();
        assert_eq!(diff[0], PositionDiff { position: 3, expected: Some(10), found: Some(4) });
    }

    #[test]
    fn empty_set_passes() {
        let set = FixtureSet::parse("# nothing\n\n", None).unwrap();
        assert!(set.is_empty());
        assert!(verify_fixtures(&set).unwrap().all_passed());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("pmm3:4:2,8,6,4\npmm9:4:1", 2),
            ("\n\npmm3:x:2", 3),
            ("pmm3:4:2,8,a", 1),
            ("pmm3:4", 1),
            ("pmm3:4:2,8,6,4\npmm3:4:2,8,6,4", 2),
        ];
        for (text, line) in cases {
            match FixtureSet::parse(text, Some(Path::new("f.txt"))) {
                Err(Error::Parse { line: l, ref path, .. }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert_eq!(path.as_deref(), Some(Path::new("f.txt")));
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
