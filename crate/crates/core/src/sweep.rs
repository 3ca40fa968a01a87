//! Resumable connectivity and diameter sweeps over a range of `n`.
//!
//! Records are appended to a CSV file, one `write_all` per record, so a crash
//! leaves at most one partial trailing line. On resume the CSV is read back,
//! a partial tail is cut off, and only missing `(kind, n)` pairs are computed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph_with, BuildOptions, EvenGraph, GraphSpec, DEFAULT_MAX_N};
use crate::metrics::{connected_components, diameter, Extent};
use crate::numeric::{OddSetKind, PrimeTable};
use crate::structure::girth;

pub const CSV_HEADER: &str = "kind,n,vertices,edges,connected,diameter,girth,ms";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub kind: OddSetKind,
    pub n: u64,
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub diameter: Extent,
    pub girth: Extent,
    pub ms: u64,
}

impl SweepRecord {
    /// Measures `graph`. Only `ms` depends on the machine.
    pub fn measure(graph: &EvenGraph) -> SweepRecord {
        let started = Instant::now();
        let connected = connected_components(graph).len() <= 1;
        let diameter = if connected { diameter(graph) } else { Extent::Infinite };
        let girth = girth(graph);
        SweepRecord {
            kind: graph.spec().kind().clone(),
            n: graph.n(),
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            connected,
            diameter,
            girth,
            ms: started.elapsed().as_millis() as u64,
        }
    }

    /// Same values apart from timing.
    pub fn same_values(&self, other: &SweepRecord) -> bool {
        SweepRecord { ms: 0, ..self.clone() } == SweepRecord { ms: 0, ..other.clone() }
    }

    fn csv_fields(&self) -> [String; 8] {
        [
            self.kind.to_string(),
            self.n.to_string(),
            self.vertices.to_string(),
            self.edges.to_string(),
            self.connected.to_string(),
            self.diameter.to_string(),
            self.girth.to_string(),
            self.ms.to_string(),
        ]
    }

    /// One CSV line including the trailing newline.
    pub fn to_csv_line(&self) -> Result<Vec<u8>> {
        let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        writer.write_record(self.csv_fields())?;
        writer
            .into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }

    fn from_csv(record: &csv::StringRecord) -> std::result::Result<Self, String> {
        if record.len() != 8 {
            return Err(format!("expected 8 fields, found {}", record.len()));
        }
        let field = |i: usize| record[i].trim();
        let num = |i: usize| field(i).parse::<u64>().map_err(|e| format!("field {i}: {e}"));
        let extent = |i: usize| field(i).parse::<Extent>().map_err(|e| format!("field {i}: {e}"));
        Ok(SweepRecord {
            kind: field(0).parse().map_err(|e: Error| e.to_string())?,
            n: num(1)?,
            vertices: num(2)? as usize,
            edges: num(3)? as usize,
            connected: field(4).parse().map_err(|e| format!("field 4: {e}"))?,
            diameter: extent(5)?,
            girth: extent(6)?,
            ms: num(7)?,
        })
    }
}

impl fmt::Display for SweepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} vertices={} edges={} connected={} diameter={} girth={} ({} ms)",
            self.kind, self.n, self.vertices, self.edges, self.connected, self.diameter, self.girth, self.ms
        )
    }
}

mod kind_names {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(kinds: &[OddSetKind], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(kinds.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<OddSetKind>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// What a sweep covers and how far it got. Stored as JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepManifest {
    pub n_lo: u64,
    pub n_hi: u64,
    pub step: u64,
    #[serde(with = "kind_names")]
    pub kinds: Vec<OddSetKind>,
    /// Completed `n` values keyed by kind name.
    #[serde(default)]
    pub completed: BTreeMap<String, BTreeSet<u64>>,
    pub output: PathBuf,
}

impl SweepManifest {
    pub fn new(n_lo: u64, n_hi: u64, step: u64, kinds: Vec<OddSetKind>, output: impl Into<PathBuf>) -> Result<Self> {
        let manifest = SweepManifest {
            n_lo,
            n_hi,
            step,
            kinds,
            completed: BTreeMap::new(),
            output: output.into(),
        };
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_lo == 0 || self.n_lo > self.n_hi {
            return Err(Error::domain(format!("bad sweep range [{}, {}]", self.n_lo, self.n_hi)));
        }
        if self.step == 0 {
            return Err(Error::domain("sweep step must be positive"));
        }
        if self.kinds.is_empty() {
            return Err(Error::domain("a sweep needs at least one kind"));
        }
        for kind in &self.kinds {
            kind.validate()?;
        }
        for (name, ns) in &self.completed {
            let kind: OddSetKind = name.parse()?;
            if !self.kinds.contains(&kind) || ns.iter().any(|&n| !self.in_range(n)) {
                return Err(Error::Consistency(format!("completed entries for {name} lie outside the sweep")));
            }
        }
        Ok(())
    }

    fn in_range(&self, n: u64) -> bool {
        n >= self.n_lo && n <= self.n_hi && (n - self.n_lo) % self.step == 0
    }

    pub fn range(&self) -> impl Iterator<Item = u64> + '_ {
        (self.n_lo..=self.n_hi).step_by(self.step as usize)
    }

    pub fn is_completed(&self, kind: &OddSetKind, n: u64) -> bool {
        self.completed.get(&kind.to_string()).is_some_and(|s| s.contains(&n))
    }

    /// `(kind, n)` pairs still to compute, in emission order.
    pub fn pending(&self) -> Vec<(OddSetKind, u64)> {
        self.kinds
            .iter()
            .flat_map(|k| self.range().filter(|&n| !self.is_completed(k, n)).map(move |n| (k.clone(), n)))
            .collect()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let manifest: SweepManifest = serde_json::from_slice(&std::fs::read(path)?)?;
        manifest.validate()?;
        Ok(manifest)
    }

    /// Writes through a temporary file and a rename, so readers never see a
    /// half-written manifest.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut file = File::create(&tmp)?;
            file.write_all(&serde_json::to_vec_pretty(self)?)?;
            file.write_all(b"\n")?;
            file.sync_all()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// Consecutive `n` values measured from one built graph.
    pub chunk: usize,
    pub max_n: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            chunk: 32,
            max_n: DEFAULT_MAX_N,
        }
    }
}

/// Reads records from a sweep CSV. A missing file reads as empty.
pub fn read_records(path: &Path) -> Result<Vec<SweepRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read(path)?;
    parse_records(&text, Some(path))
}

fn parse_records(text: &[u8], path: Option<&Path>) -> Result<Vec<SweepRecord>> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.map(Path::to_path_buf),
        line,
        message,
    };
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(parse_err(1, format!("expected header {CSV_HEADER:?}")));
    }
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        out.push(SweepRecord::from_csv(&row).map_err(|m| parse_err(i + 2, m))?);
    }
    Ok(out)
}

/// Opens the output for appending after cutting any partial last line and
/// writing the header into an empty file. Returns the records already present.
fn prepare_output(path: &Path) -> Result<(File, Vec<SweepRecord>)> {
    let mut file = OpenOptions::new().read(true).write(true).create(true).truncate(false).open(path)?;
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes)?;
    let keep = match bytes.iter().rposition(|&b| b == b'\n') {
        Some(i) => i + 1,
        None => 0,
    };
    if keep < bytes.len() {
        bytes.truncate(keep);
        file.set_len(keep as u64)?;
    }
    file.seek(SeekFrom::End(0))?;
    if bytes.is_empty() {
        file.write_all(format!("{CSV_HEADER}\n").as_bytes())?;
        file.sync_data()?;
    }
    let records = parse_records(&bytes, Some(path))?;
    Ok((file, records))
}

/// Computes every pending `(kind, n)` of the manifest and appends the records
/// in sorted order. The manifest file, when given, is rewritten after each
/// chunk. `progress` sees each record as it is written.
pub fn run_sweep(
    manifest: &mut SweepManifest,
    manifest_path: Option<&Path>,
    options: SweepOptions,
    mut progress: impl FnMut(&SweepRecord),
) -> Result<Vec<SweepRecord>> {
    manifest.validate()?;
    if manifest.n_hi > options.max_n {
        return Err(Error::Capacity {
            n: manifest.n_hi,
            max: options.max_n,
        });
    }
    let (mut file, existing) = prepare_output(&manifest.output)?;
    for r in &existing {
        if manifest.kinds.contains(&r.kind) && manifest.in_range(r.n) {
            manifest.completed.entry(r.kind.to_string()).or_default().insert(r.n);
        }
    }
    // entries not backed by a CSV row are recomputed
    let on_disk: BTreeSet<(String, u64)> = existing.iter().map(|r| (r.kind.to_string(), r.n)).collect();
    for (name, ns) in manifest.completed.iter_mut() {
        ns.retain(|&n| on_disk.contains(&(name.clone(), n)));
    }
    if let Some(path) = manifest_path {
        manifest.save(path)?;
    }

    let build = BuildOptions { max_n: options.max_n };
    let mut appended = Vec::new();
    let pending = manifest.pending();
    let mut by_kind: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for (kind, n) in &pending {
        let idx = manifest.kinds.iter().position(|k| k == kind).unwrap();
        by_kind.entry(idx).or_default().push(*n);
    }
    for (idx, ns) in by_kind {
        let kind = manifest.kinds[idx].clone();
        for chunk in ns.chunks(options.chunk.max(1)) {
            let top = *chunk.last().unwrap();
            let graph = build_graph_with(&GraphSpec::new(kind.clone(), top)?, &build)?;
            let mut records = chunk
                .par_iter()
                .map(|&n| {
                    let started = Instant::now();
                    let g = if n == top { graph.clone() } else { graph.truncate(n)? };
                    let mut record = SweepRecord::measure(&g);
                    record.ms = started.elapsed().as_millis() as u64;
                    Ok(record)
                })
                .collect::<Result<Vec<_>>>()?;
            records.sort_by_key(|r| r.n);
            for record in records {
                file.write_all(&record.to_csv_line()?)?;
                file.flush()?;
                manifest.completed.entry(kind.to_string()).or_default().insert(record.n);
                progress(&record);
                appended.push(record);
            }
            file.sync_data()?;
            if let Some(path) = manifest_path {
                manifest.save(path)?;
            }
        }
    }
    Ok(appended)
}

/// Goldbach-graph connectivity next to a direct check that every even
/// number in `[6, 2n]` is a sum of two odd primes. No relation between the
/// two is asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub n: u64,
    pub components: usize,
    pub connected: bool,
    pub sums_hold: bool,
    /// The smallest even number in range that is not a sum of two odd primes.
    pub first_failure: Option<u64>,
}

/// An odd prime `p <= e/2` with `e - p` an odd prime, if any.
pub fn odd_prime_pair(e: u64, primes: &PrimeTable) -> Option<(u64, u64)> {
    primes
        .odd_primes()
        .iter()
        .take_while(|&&p| 2 * p <= e)
        .find(|&&p| primes.is_prime(e - p))
        .map(|&p| (p, e - p))
}

pub fn goldbach_consistency(n: u64) -> Result<ConsistencyReport> {
    if n == 0 {
        return Err(Error::domain("goldbach consistency needs n >= 1"));
    }
    let graph = build_graph_with(
        &GraphSpec::new(OddSetKind::Goldbach, n)?,
        &BuildOptions { max_n: n.max(DEFAULT_MAX_N) },
    )?;
    let components = connected_components(&graph).len();
    let primes = PrimeTable::new(2 * n + 1);
    let first_failure = (3..=n).map(|m| 2 * m).find(|&e| odd_prime_pair(e, &primes).is_none());
    Ok(ConsistencyReport {
        n,
        components,
        connected: components == 1,
        sums_hold: first_failure.is_none(),
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn record(kind: OddSetKind, n: u64) -> SweepRecord {
        SweepRecord::measure(&build_graph(&GraphSpec::new(kind, n).unwrap()).unwrap())
    }

    #[test]
    fn record_examples() {
        let r = record(OddSetKind::NearGoldbach, 18);
        assert!(r.connected);
        assert!(r.diameter <= Extent::Finite(5));
        let near = record(OddSetKind::NearGoldbach, 12);
        let g3 = record(OddSetKind::PrimeMultipleMissing(3), 12);
        assert!(SweepRecord { kind: g3.kind.clone(), ..near.clone() }.same_values(&g3));
        let gb = record(OddSetKind::Goldbach, 2);
        assert!(!gb.connected);
        assert_eq!(gb.diameter, Extent::Infinite);
        assert_eq!(gb.girth, Extent::Infinite);
        assert_eq!(gb.vertices, 3);
    }

    #[test]
    fn csv_line_round_trip() {
        let r = SweepRecord {
            kind: OddSetKind::PrimeIntersection(vec![3, 5, 7]),
            n: 9,
            vertices: 9,
            edges: 12,
            connected: false,
            diameter: Extent::Infinite,
            girth: Extent::Finite(4),
            ms: 3,
        };
        let line = r.to_csv_line().unwrap();
        assert_eq!(String::from_utf8(line.clone()).unwrap(), "\"intersect:3,5,7\",9,9,12,false,inf,4,3\n");
        let mut text = format!("{CSV_HEADER}\n").into_bytes();
        text.extend(line);
        assert_eq!(parse_records(&text, None).unwrap(), vec![r]);
    }

    #[test]
    fn header_is_checked() {
        let err = parse_records(b"a,b\n1,2\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn manifest_validation() {
        assert!(SweepManifest::new(0, 5, 1, vec![OddSetKind::Goldbach], "x").is_err());
        assert!(SweepManifest::new(5, 4, 1, vec![OddSetKind::Goldbach], "x").is_err());
        assert!(SweepManifest::new(1, 4, 0, vec![OddSetKind::Goldbach], "x").is_err());
        assert!(SweepManifest::new(1, 4, 1, vec![], "x").is_err());
        let mut m = SweepManifest::new(2, 10, 4, vec![OddSetKind::Goldbach], "x").unwrap();
        assert_eq!(m.range().collect::<Vec<_>>(), vec![2, 6, 10]);
        m.completed.entry("goldbach".into()).or_default().insert(3);
        assert!(m.validate().is_err());
    }

    #[test]
    fn consistency_examples() {
        let r = goldbach_consistency(50).unwrap();
        assert!(r.sums_hold);
        assert!(r.connected);
        let r = goldbach_consistency(2).unwrap();
        assert!(r.sums_hold);
        assert!(!r.connected);
        assert_eq!(r.components, 3);
        assert!(goldbach_consistency(1000).unwrap().sums_hold);
        let primes = PrimeTable::new(100);
        assert_eq!(odd_prime_pair(6, &primes), Some((3, 3)));
        assert_eq!(odd_prime_pair(4, &primes), None);
    }
}
