use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn chromavar(args: &[&str], battery_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chromavar"));
    cmd.args(args).env_remove("CHROMAVAR_BATTERY_DIR");
    if let Some(dir) = battery_dir {
        cmd.env("CHROMAVAR_BATTERY_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", e, String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn rep_prints_level_sizes() {
    let s3 = fixture("s3.group.json");
    let out = chromavar(&["rep", "--group", s3.to_str().unwrap(), "-p", "2", "-n", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["level_sizes"], serde_json::json!([1, 2, 4]));
    assert_eq!(v["representatives"][1], serde_json::json!(["[()]", "[(1 2)]"]));
}

#[test]
fn trivial_group_verifies() {
    let g = fixture("trivial.group.json");
    let out = chromavar(&["verify", "--group", g.to_str().unwrap(), "-p", "2", "-d", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["total"].as_u64().unwrap() > 0);
}

#[test]
fn q8_at_level_one() {
    let g = fixture("q8.group.json");
    let out = chromavar(&["verify", "--group", g.to_str().unwrap(), "-p", "2", "-n", "1", "-d", "2", "--format", "tsv"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["green-leary colimit", "borel model", "counit injective"] {
        assert!(text.lines().any(|l| l.contains(name) && l.contains("\tpass\t")), "{}", name);
    }
}

#[test]
fn empty_battery_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = chromavar(&["verify"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["total"], 0);
    assert_eq!(v["checks"], serde_json::json!([]));
}

#[test]
fn corrupted_presheaf_in_battery_fails_with_matrix_pair() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(fixture("z2.group.json"), dir.path().join("z2.group.json")).unwrap();
    fs::copy(fixture("corrupted.presheaf.json"), dir.path().join("corrupted.presheaf.json")).unwrap();
    let out = chromavar(&["verify", "--format", "tsv"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.contains("presheaf functoriality")).unwrap();
    assert!(line.contains("\tfail\t"), "{}", line);
    assert!(line.contains("A = 1x0:") && line.contains("B = 0x1:"), "{}", line);
    // the group's own checks still pass
    assert!(text.lines().filter(|l| l.starts_with("z2\t")).all(|l| l.contains("\tpass\t")));
}

#[test]
fn battery_directory_with_complex() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(fixture("s3.group.json"), dir.path().join("s3.group.json")).unwrap();
    fs::copy(fixture("s3_path.complex.json"), dir.path().join("s3_path.complex.json")).unwrap();
    let out = chromavar(&["verify", "--format", "tsv"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("borel model\ts3_path")).count(), 6);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.group.json");
    fs::write(&bad, "{\"degree\": 2, \"generators\": [[1, 1]]}").unwrap();
    let out = chromavar(&["group-info", "--group", bad.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.group.json"));

    let s3 = fixture("s3.group.json");
    let out = chromavar(&["rep", "--group", s3.to_str().unwrap(), "-p", "4", "-n", "1"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = chromavar(&["rep", "--group", s3.to_str().unwrap(), "-p", "2", "-n", "3", "--cap-enum", "10"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = chromavar(&["no-such-command"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn computations_report_expected_values() {
    let s3 = fixture("s3.group.json");
    let g = s3.to_str().unwrap();
    let v = json(&chromavar(&["hkr-rank", "--group", g, "-p", "2", "-n", "2"], None));
    assert_eq!(v["rank"], 4);
    let v = json(&chromavar(&["subgroups", "--group", g, "-p", "2"], None));
    assert_eq!(v["count_by_rank"], serde_json::json!([1, 3]));
    let v = json(&chromavar(&["beta", "--group", g, "-p", "2", "-n", "inf"], None));
    assert_eq!(v["beta_sizes"], v["source_sizes"]);
    let v = json(&chromavar(&["gl-colimit", "--group", g, "-p", "2", "-n", "1"], None));
    assert_eq!(v["isomorphic"], true);
    let v = json(&chromavar(&["green-leary", "--group", g, "-p", "2", "-n", "1"], None));
    assert_eq!(v["equals_quillen"], true);
    let v = json(&chromavar(&["coend", "--group", g, "-p", "3"], None));
    // (e, e) plus the eight other pairs of 3-cycles, swapped in twos by conjugation
    assert_eq!(v["level_sizes"], serde_json::json!([1, 2, 5]));
    let v = json(&chromavar(&["quillen-cat", "--group", g, "-p", "3"], None));
    assert_eq!(v["hom_counts"], serde_json::json!([[1, 1], [0, 2]]));
    let v = json(&chromavar(&["group-info", "--group", g], None));
    assert_eq!(v["order"], 6);
    let line = fixture("line.presheaf.json");
    let v = json(&chromavar(&["beta", "--presheaf", line.to_str().unwrap(), "-n", "0"], None));
    assert_eq!(v["beta_sizes"], serde_json::json!([1, 1]));
}
