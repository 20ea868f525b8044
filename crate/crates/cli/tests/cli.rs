use std::path::Path;
use std::process::{Command, Output};

fn b0lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_b0lab"))
        .args(args)
        .env_remove("B0LAB_P")
        .env_remove("B0LAB_CACHE")
        .env_remove("B0LAB_FORMAT")
        .env_remove("B0LAB_METHOD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const HEIS: &str = "p 3\ngens 3\nname Heis27\ncomm 2 1 : 3^1\n";

#[test]
fn group_info_golden_values() {
    let o = b0lab(&["group", "info", "gap:28", "--p", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["center_order"], 3);
    assert_eq!(v["order"], 243);

    let o = b0lab(&["group", "info", "abelian:1,1,1,1,1", "--p", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exponent"], 3);
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.pcp", "p 3\ngens 2\ncomm 2 1 : 3^1\n");
    let o = b0lab(&["group", "info", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let o = b0lab(&["ingest", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let inconsistent = write(dir.path(), "inc.pcp", "p 3\ngens 3\npow 1 : 2^1\ncomm 2 1 : 3^1\n");
    assert_eq!(b0lab(&["b0", &inconsistent]).status.code(), Some(2));
}

#[test]
fn b0_examples() {
    let o = b0lab(&["b0", "gap:29", "--p", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["b0_nonzero"], true);

    let dir = tempfile::tempdir().unwrap();
    let heis = write(dir.path(), "heis.pcp", HEIS);
    let o = b0lab(&["b0", &heis, "--method", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["b0_nonzero"], false);
    assert!(v["certificates"].as_array().unwrap().iter().any(|c| c == "oracle agrees"));

    let o = b0lab(&["b0", "gap:28", "--p", "3", "--method", "oracle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn env_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_b0lab"))
        .args(["catalog", "list"])
        .env("B0LAB_P", "5")
        .env("B0LAB_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["phi10_count"], 6);
    assert_eq!(v["bagnera"], 77);
}

#[test]
fn verify_exit_codes() {
    let o = b0lab(&["verify", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("3 with B0 != 0"));
    assert_eq!(b0lab(&["verify", "--p", "2"]).status.code(), Some(2));
    assert_eq!(b0lab(&["verify", "--p", "9"]).status.code(), Some(2));
}

#[test]
fn verify_reports_mismatch_with_exit_3() {
    // Name a Phi10 group by a GAP id outside 28..30 so its tag is wrong.
    let dir = tempfile::tempdir().unwrap();
    let pres = b0lab::catalog::build_phi10(3, "(1^5)").unwrap();
    write(dir.path(), "243_31.pcp", &pres.to_pcp());
    let o = b0lab(&["verify", "--p", "3", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Phi10(1^5)") || String::from_utf8_lossy(&o.stderr).contains("243_31"));
}

#[test]
fn isoclinism_verdicts() {
    let o = b0lab(&["isoclinism", "gap:28", "gap:30", "--p", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["isoclinic"], true);
    assert_eq!(v["witness_validated"], true);
    let o = b0lab(&["isoclinism", "gap:28", "gap:56", "--p", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["isoclinic"], false);
}

#[test]
fn cache_and_report_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let heis = write(dir.path(), "heis.pcp", HEIS);
    // same relations, different whitespace and comments
    let heis2 = write(dir.path(), "heis2.pcp", "# copy\np 3\ngens   3\nname Heis27\n\ncomm 2 1 : 3^1  # [g2,g1]\n");
    let cache = dir.path().join("cache.jsonl");
    let cache = cache.to_str().unwrap();
    assert_eq!(b0lab(&["b0", &heis, "--cache", cache]).status.code(), Some(0));
    assert_eq!(b0lab(&["b0", &heis2, "--cache", cache]).status.code(), Some(0));
    let lines = std::fs::read_to_string(cache).unwrap();
    assert_eq!(lines.lines().count(), 1, "second run is a cache hit");

    let r1 = stdout(&b0lab(&["report", "--cache", cache, "--format", "json"]));
    let r2 = stdout(&b0lab(&["report", "--cache", cache, "--format", "json"]));
    assert_eq!(r1, r2);
    let csv = stdout(&b0lab(&["report", "--cache", cache, "--format", "csv"]));
    assert!(csv.starts_with("name,p,n,method,b0_invariants,|M|,|M0|,elapsed_ms\n"));

    let empty = dir.path().join("none.jsonl");
    let o = b0lab(&["report", "--cache", empty.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn ingest_writes_canonical_copies() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "heis.pcp", "# comment\np 3\ngens 3\ncomm 2 1 : 3^4\n");
    let out = dir.path().join("out");
    let o = b0lab(&["ingest", &src, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let copy = std::fs::read_to_string(out.join("heis.pcp")).unwrap();
    assert_eq!(copy, "p 3\ngens 3\nname heis\ncomm 2 1 : 3^1\n");
}
