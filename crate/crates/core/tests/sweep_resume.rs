use std::fs;

use goldbach_lab::sweep::{read_records, run_sweep, SweepManifest, SweepOptions, SweepRecord, CSV_HEADER};
use goldbach_lab::{build_graph, GraphSpec, OddSetKind};

fn kinds() -> Vec<OddSetKind> {
    vec![OddSetKind::NearGoldbach, OddSetKind::Goldbach]
}

fn options() -> SweepOptions {
    SweepOptions { chunk: 7, ..SweepOptions::default() }
}

#[test]
fn fresh_sweep_writes_sorted_records() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let manifest_path = dir.path().join("manifest.json");
    let mut m = SweepManifest::new(1, 40, 3, kinds(), &csv).unwrap();
    let mut seen = 0;
    let records = run_sweep(&mut m, Some(&manifest_path), options(), |_| seen += 1).unwrap();
    assert_eq!(records.len(), 28);
    assert_eq!(seen, 28);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    let on_disk = read_records(&csv).unwrap();
    assert_eq!(on_disk, records);
    let keys: Vec<(usize, u64)> = on_disk
        .iter()
        .map(|r| (kinds().iter().position(|k| *k == r.kind).unwrap(), r.n))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for r in &on_disk {
        let direct = SweepRecord::measure(&build_graph(&GraphSpec::new(r.kind.clone(), r.n).unwrap()).unwrap());
        assert!(r.same_values(&direct), "{r} vs {direct}");
        assert_eq!(r.connected, r.diameter.is_finite());
    }
    let saved = SweepManifest::load(&manifest_path).unwrap();
    assert_eq!(saved, m);
    assert!(saved.pending().is_empty());
}

#[test]
fn rerunning_a_completed_sweep_changes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let manifest_path = dir.path().join("manifest.json");
    let mut m = SweepManifest::new(1, 30, 1, kinds(), &csv).unwrap();
    run_sweep(&mut m, Some(&manifest_path), options(), |_| {}).unwrap();
    let before = fs::read(&csv).unwrap();
    let mut again = SweepManifest::load(&manifest_path).unwrap();
    let added = run_sweep(&mut again, Some(&manifest_path), options(), |_| {}).unwrap();
    assert!(added.is_empty());
    assert_eq!(fs::read(&csv).unwrap(), before);
}

#[test]
fn resume_after_a_torn_write() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let mut full = SweepManifest::new(1, 30, 1, kinds(), dir.path().join("full.csv")).unwrap();
    run_sweep(&mut full, None, options(), |_| {}).unwrap();

    let mut m = SweepManifest::new(1, 12, 1, vec![OddSetKind::NearGoldbach], &csv).unwrap();
    run_sweep(&mut m, None, options(), |_| {}).unwrap();
    // simulate a crash halfway through the next record
    let mut bytes = fs::read(&csv).unwrap();
    bytes.extend_from_slice(b"near-goldbach,13,13,2");
    fs::write(&csv, &bytes).unwrap();

    // the stale manifest claims more than the CSV holds; the CSV wins
    let mut resumed = SweepManifest::new(1, 30, 1, kinds(), &csv).unwrap();
    resumed.completed.entry("near-goldbach".into()).or_default().extend(1..=20);
    let added = run_sweep(&mut resumed, None, options(), |_| {}).unwrap();
    assert_eq!(added.len(), 60 - 12);
    assert_eq!(added[0].n, 13);

    let got = read_records(&csv).unwrap();
    let want = read_records(&dir.path().join("full.csv")).unwrap();
    assert_eq!(got.len(), want.len());
    for (a, b) in got.iter().zip(&want) {
        assert!(a.same_values(b), "{a} vs {b}");
    }
}

#[test]
fn bad_csv_is_reported_with_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    fs::write(&csv, format!("{CSV_HEADER}\nnear-goldbach,1,1,0,true,0,inf,0\nnear-goldbach,x,1,0,true,0,inf,0\n")).unwrap();
    let err = read_records(&csv).unwrap_err();
    assert!(matches!(err, goldbach_lab::Error::Parse { line: 3, .. }), "{err}");
    let mut m = SweepManifest::new(1, 3, 1, kinds(), &csv).unwrap();
    assert!(run_sweep(&mut m, None, options(), |_| {}).is_err());
}

#[test]
fn capacity_is_checked_before_any_work() {
    let dir = tempfile::tempdir().unwrap();
    let mut m = SweepManifest::new(1, 50, 1, kinds(), dir.path().join("out.csv")).unwrap();
    let err = run_sweep(&mut m, None, SweepOptions { chunk: 4, max_n: 40 }, |_| {}).unwrap_err();
    assert!(matches!(err, goldbach_lab::Error::Capacity { n: 50, max: 40 }));
    assert!(!dir.path().join("out.csv").exists());
}
