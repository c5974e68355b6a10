use std::fs;

use colebrook::eval::{
    export_csv, export_heatmap, reference_field, scan_errors, scan_with_reference, GridSpec,
};
use colebrook::SchemeSpec;

fn maxima(ids: &[&str], grid: &GridSpec) -> Vec<f64> {
    let field = reference_field(grid, 1e-12, 4).unwrap();
    ids.iter()
        .map(|id| {
            let spec = SchemeSpec::lookup(id).unwrap();
            scan_with_reference(&spec, &field, 4).unwrap().1.max_pct
        })
        .collect()
}

#[test]
fn each_acceleration_step_lowers_the_maximum() {
    let chains: [&[&str]; 5] = [
        &["eq2", "eq2a1", "eq2a2"],
        &["eq3", "eq3a", "eq3a2"],
        &["eq4", "eq4a", "eq4a2"],
        &["eq5", "eq5a", "eq5a2"],
        &["eq6", "eq6a", "eq6a2"],
    ];
    let grid = GridSpec::default();
    for chain in chains {
        let m = maxima(chain, &grid);
        assert!(m.windows(2).all(|w| w[1] < w[0]), "{chain:?}: {m:?}");
    }
}

#[test]
fn maxima_are_resolved_by_the_mesh() {
    let ids = [
        "eq2", "eq2a1", "eq2a2", "eq3", "eq3a", "eq4", "eq4a", "eq5", "eq5a", "eq6", "eq6a",
    ];
    let base = GridSpec::default();
    let fine = base.with_size(2 * base.n_re, 2 * base.n_rough);
    for ((id, a), b) in ids.iter().zip(maxima(&ids, &base)).zip(maxima(&ids, &fine)) {
        assert!(((b - a) / a).abs() < 0.10, "{id}: {a} -> {b}");
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let grid = GridSpec::default();
    let spec = SchemeSpec::lookup("eq2a2").unwrap();
    let (map1, s1) = scan_errors(&spec, &grid, 1e-12, 1).unwrap();
    for w in [4, 8] {
        let (map, s) = scan_errors(&spec, &grid, 1e-12, w).unwrap();
        assert_eq!(s.max_pct.to_bits(), s1.max_pct.to_bits());
        assert_eq!(
            (s.argmax_re, s.argmax_rough),
            (s1.argmax_re, s1.argmax_rough)
        );
        assert_eq!(s.p99_pct, s1.p99_pct);
        assert!((s.mean_pct / s1.mean_pct - 1.0).abs() <= 1e-12);
        assert_eq!(map.entries, map1.entries);
    }
}

#[test]
fn exports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let grid = GridSpec::default().with_size(60, 50);
    let spec = SchemeSpec::lookup("eq6a").unwrap();
    let mut files = Vec::new();
    for (run, workers) in [(0, 1), (1, 7)] {
        let (map, _) = scan_errors(&spec, &grid, 1e-12, workers).unwrap();
        let csv = dir.path().join(format!("{run}.csv"));
        let pgm = dir.path().join(format!("{run}.pgm"));
        export_csv(&map, &csv).unwrap();
        export_heatmap(&map, &pgm).unwrap();
        files.push((fs::read(csv).unwrap(), fs::read(pgm).unwrap()));
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(String::from_utf8_lossy(&files[0].0).lines().count(), 3001);
}

#[test]
fn full_mesh_csv_line_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq2.csv");
    let (map, _) = scan_errors(
        &SchemeSpec::lookup("eq2").unwrap(),
        &GridSpec::default(),
        1e-12,
        4,
    )
    .unwrap();
    export_csv(&map, &path).unwrap();
    assert_eq!(fs::read_to_string(path).unwrap().lines().count(), 90_001);
}
