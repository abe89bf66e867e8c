use std::path::PathBuf;
use std::process::{Command, Output};

fn ringlab(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ringlab"));
    c.args(args).env_remove("RINGLAB_TIME_BUDGET_SECS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn ring(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("rings").join(format!("{name}.ring")).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_with_matching_expectations() {
    let o = ringlab(&["check", &ring("f2d8"), "--expect", "reflexive=true,semicommutative=false"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("semicommutative  false"));
}

#[test]
fn check_reports_mismatch() {
    let o = ringlab(&["check", &ring("f2d8"), "--expect", "semicommutative=true"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("semicommutative: expected true, found false"));
}

#[test]
fn check_json_schema() {
    let o = ringlab(&["check", &ring("ex1"), "--json", "--threads", "2"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["unit_order_max"], 12);
    assert_eq!(v["order"], 256);
    assert_eq!(v["residue_field_size"], 4);
    for key in ["name", "dim", "field", "local", "chain", "filtration_dims", "nilpotency_index", "properties", "timings"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["properties"]["semicommutative"]["verdict"], "false");
    assert!(v["properties"]["semicommutative"]["witness"]["a"].is_string());
}

#[test]
fn time_budget_exit_code() {
    let o = ringlab(&["check", &ring("f2d8")], &[("RINGLAB_TIME_BUDGET_SECS", "0")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("time budget exceeded"));
    let o = ringlab(&["check", &ring("f2d8")], &[("RINGLAB_TIME_BUDGET_SECS", "soon")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn undecided_symmetric_without_long() {
    let o = ringlab(&["check", &ring("marks"), "--expect", "symmetric=false"], &[]);
    assert_eq!(o.status.code(), Some(3));
    let o = ringlab(&["check", &ring("marks"), "--long", "--expect", "symmetric=false"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn build_errors() {
    let dir = tempfile::tempdir().unwrap();
    let inf = dir.path().join("inf.ring");
    std::fs::write(&inf, "ring \"inf\" {\n  field F2\n  gens u v\n  rel u^2\n}\n").unwrap();
    let o = ringlab(&["check", inf.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("basis is not finite"), "{}", stderr(&o));
    assert!(stderr(&o).contains("uvuvuvuv"));
    let bad = dir.path().join("bad.ring");
    std::fs::write(&bad, "ring \"x\" {\n  field F2\n  gens u\n  rel u*q\n}\n").unwrap();
    let o = ringlab(&["check", bad.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("4:9: unknown generator `q`"));
    let o = ringlab(&["check", dir.path().join("missing.ring").to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn group_from_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c2.table"), "2\n0 1\n1 0\n").unwrap();
    let f = dir.path().join("g.ring");
    std::fs::write(&f, "ring \"g\" { field F2 group file \"c2.table\" }\n").unwrap();
    let o = ringlab(&["check", f.to_str().unwrap(), "--expect", "chain=true,order=4"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn info_is_structural() {
    let o = ringlab(&["info", &ring("marks")], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("order 8192"));
    assert!(s.contains("[3, 6, 3]"));
    assert!(!s.contains("reversible"));
}

#[test]
fn search_writes_hits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hits.jsonl");
    let cfg = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("search/non_ni.search");
    let o = ringlab(&["search", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(summary["min_order"], 16);
    let hits = std::fs::read_to_string(&out).unwrap();
    let first: serde_json::Value = serde_json::from_str(hits.lines().next().unwrap()).unwrap();
    assert_eq!(first["order"], 16);
    let o = ringlab(&["search", cfg.to_str().unwrap()], &[("RINGLAB_TIME_BUDGET_SECS", "0")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn suite_json_is_stable() {
    let a = ringlab(&["paper-suite", "--json"], &[]);
    let b = ringlab(&["paper-suite", "--json"], &[]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 11);
    assert_eq!(v["criteria"][6]["status"], "skipped");
}
