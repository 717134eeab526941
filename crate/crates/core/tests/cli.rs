use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn polybound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polybound"))
        .args(args)
        .env_remove("POLYBOUND_WINDOW")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = polybound(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), v)
}

fn lines(v: &Value) -> String {
    v.as_array()
        .unwrap()
        .iter()
        .map(|l| format!("{}\n", l.as_str().unwrap()))
        .collect()
}

#[test]
fn example_cover_file_verifies() {
    let (code, v) = json(&[
        "--window",
        "2001",
        "cover",
        "verify",
        "builtin:zpm",
        "--file",
        &data("ex.cover"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["exhaustive"], false);
    assert_eq!(v["window"], 2001);
    let keys: Vec<&String> = v.as_object().unwrap().keys().take(5).collect();
    assert_eq!(keys, ["command", "semigroup", "window", "status", "exhaustive"]);
}

#[test]
fn exit_codes_follow_the_status() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cover");
    std::fs::write(&bad, "x . x = 0\n").unwrap();
    let (code, v) = json(&["cover", "verify", "builtin:cyclic:3", "--file", bad.to_str().unwrap()]);
    assert_eq!((code, v["status"].as_str()), (1, Some("counterexample")));

    let (code, v) = json(&[
        "--window",
        "50",
        "cover",
        "search",
        "builtin:nat-plus",
        "--deg",
        "2",
        "--coeffs",
        "0..4",
    ]);
    assert_eq!((code, v["status"].as_str()), (2, Some("inconclusive")));
    assert_eq!(v["outcome"], "none-within-bounds");

    let (code, v) = json(&["analyze", "product(builtin:zpm"]);
    assert_eq!((code, v["status"].as_str()), (3, Some("error")));
    assert!(v["error"].as_str().unwrap().contains("1:20"));

    let out = polybound(&["cover", "verify"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "lab",
            "filter",
            "builtin:taimanov",
            "--base",
            "random:6",
            "--shifts",
            "id,id,id",
            "--seed",
            "9",
        ][..],
        &["cover", "search", "builtin:s3", "--deg", "2", "--coeffs", "0..6"][..],
        &["--window", "40", "analyze", "builtin:free:2"][..],
    ] {
        let a = polybound(args);
        let b = polybound(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
        assert!(!String::from_utf8_lossy(&a.stdout).contains("timing"));
    }
}

#[test]
fn window_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_polybound"))
        .args(["analyze", "builtin:nat-plus"])
        .env("POLYBOUND_WINDOW", "37")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("window: 37\n"));
}

#[test]
fn searched_cover_round_trips_through_verify() {
    let (code, v) = json(&["cover", "search", "builtin:cyclic:6", "--deg", "2", "--coeffs", "0..6"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c6.cover");
    std::fs::write(&file, lines(&v["cover"])).unwrap();
    let (code, v) = json(&["cover", "verify", "builtin:cyclic:6", "--file", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn isolation_certificate_round_trips() {
    let table = format!("cayley:{}", data("c4.tbl"));
    let (code, v) = json(&["zariski", "isolate", &table, "--point", "2"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("iso.cert");
    std::fs::write(&file, lines(&v["certificate"])).unwrap();
    let (code, v) = json(&["zariski", "verify", &table, "--file", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn normalized_covers_reverify() {
    let s3 = format!("cayley:{}", data("s3.tbl"));
    for sub in ["prune", "regularize", "normalize-group"] {
        let (code, v) = json(&["cover", sub, &s3, "--trivial"]);
        assert_eq!(code, 0, "{sub}: {v}");
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("out.cover");
        std::fs::write(&file, lines(&v["cover"])).unwrap();
        let (code, _) = json(&["cover", "verify", &s3, "--file", file.to_str().unwrap()]);
        assert_eq!(code, 0, "{sub}");
    }
}

#[test]
fn table_files_and_products() {
    let (code, v) = json(&["analyze", &format!("cayley:{}", data("s3.tbl"))]);
    assert_eq!(code, 0);
    assert_eq!(v["group"], true);
    assert_eq!(v["order"], 6);

    let c2 = format!("cayley:{}", data("c2.tbl"));
    let (code, v) = json(&["cover", "product", &c2, &c2, "--trivial"]);
    assert_eq!(code, 0);
    assert_eq!(v["exhaustive"], true);

    let (code, v) = json(&[
        "cover",
        "transport",
        "builtin:cyclic:4",
        "--trivial",
        "--identify",
        "0:2",
    ]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn scenario_filter() {
    let (code, v) = json(&[
        "--window",
        "200",
        "lab",
        "filter",
        "builtin:taimanov",
        "--scenario",
        &data("taimanov.scenario"),
        "--iterate",
        "1",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["witness_pair"], serde_json::json!([0, 1]));
}

#[test]
fn timing_is_opt_in() {
    let out = polybound(&["--timing", "analyze", "builtin:trivial"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("timing_ms: "));
}
