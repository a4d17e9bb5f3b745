use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn focklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_focklab")).args(args).output().expect("spawn focklab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "stderr: {text}");
    serde_json::from_str(text.trim()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn constant_one_is_essentially_positive() {
    let o = focklab(&["esspos", "--symbol", "radial:const:1", "--mode", "radial"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], "positive");
    assert!((report["margin"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn weyl_at_origin_assembles_to_identity() {
    let o = focklab(&["assemble", "--symbol", "weyl:0+0i", "--dim", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let m: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m["dim"], 8);
    let entries = m["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 64);
    for (k, e) in entries.iter().enumerate() {
        let expect = if k / 8 == k % 8 { 1.0 } else { 0.0 };
        assert!((e[0].as_f64().unwrap() - expect).abs() < 1e-12);
        assert!(e[1].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn counterexample_at_zero_has_ratio_one() {
    let o = focklab(&["counterexample", "--t", "2", "--radii", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "absz,ess_exact,ess_numeric,berezin_sup,ratio");
    let ratio: f64 = lines[1].rsplit(',').next().unwrap().parse().unwrap();
    assert!((ratio - 1.0).abs() < 1e-9);
}

#[test]
fn bad_symbol_reports_json_error_with_status_one() {
    let o = focklab(&["esspos", "--symbol", "radial:bogus:1"]);
    assert_eq!(o.status.code(), Some(1));
    let e = error_json(&o);
    assert_eq!(e["error"], "parse");
    assert_eq!(e["exit_code"], 1);
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = focklab(&["assemble", "--symbol", "radial:const:1", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"], "usage");
}

#[test]
fn strict_turns_inconclusive_into_status_three() {
    let args = ["esspos", "--symbol", "fn:cosre", "--mode", "symbol-liminf"];
    let relaxed = focklab(&args);
    assert_eq!(relaxed.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&relaxed)).unwrap();
    assert_eq!(report["verdict"], "inconclusive");
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(focklab(&strict).status.code(), Some(3));
}

#[test]
fn limitops_rejects_complex_symbols() {
    let o = focklab(&["esspos", "--symbol", "weyl:1+0i", "--mode", "limitops", "--dim", "16"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["exit_code"], 1);
}

#[test]
fn manifest_replays_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let o = focklab(&["counterexample", "--radii", "0,1", "--dim", "40", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let manifest_path = dir.path().join("table.csv.manifest.json");
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["command"], "counterexample");
    assert_eq!(manifest["config"]["dim"], 40);
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);

    let r = focklab(&["replay", "--manifest", path_str(&manifest_path)]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let line: Value = serde_json::from_str(stdout(&r).trim()).unwrap();
    assert_eq!(line["reproduced"], true);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(dir.path().join("table.csv.replay")).unwrap());

    let mut tampered = manifest.clone();
    tampered["outputs"][0]["sha256"] = Value::String("0".repeat(64));
    std::fs::write(&manifest_path, tampered.to_string()).unwrap();
    let r = focklab(&["replay", "--manifest", path_str(&manifest_path)]);
    assert_eq!(r.status.code(), Some(2));
    assert_eq!(error_json(&r)["error"], "replay_mismatch");
}

#[test]
fn search_output_does_not_depend_on_thread_count() {
    let run = |threads: &str| {
        let o = focklab(&["--threads", threads, "search", "--iters", "40", "--seed", "7", "--dim", "96"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let result: Value = serde_json::from_slice(&one).unwrap();
    assert_eq!(result["seed"], 7);
}

#[test]
fn eigs_of_assembled_radial_matrix_match_direct_eigenvalues() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let symbol = "radial:pw:0,1,2|-1,0.5|0.25";
    assert_eq!(focklab(&["assemble", "--symbol", symbol, "--dim", "12", "--out", path_str(&m)]).status.code(), Some(0));
    let from_file = stdout(&focklab(&["eigs", "--in", path_str(&m)]));
    let direct = stdout(&focklab(&["eigs", "--symbol", symbol, "--dim", "12"]));
    let parse = |s: &str| -> Vec<f64> {
        let mut v: Vec<f64> = s.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let (a, b) = (parse(&from_file), parse(&direct));
    assert_eq!(a.len(), 12);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10, "{x} vs {y}");
    }
}

#[test]
fn berezin_reads_points_from_file_and_matches_matrix_route() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    std::fs::write(&pts, "s,theta\n0.5,0\n1.5,1.0\n").unwrap();
    let series = stdout(&focklab(&["berezin", "--symbol", "radial:ind:1", "--points", path_str(&pts)]));
    let m = dir.path().join("m.json");
    focklab(&["assemble", "--symbol", "radial:ind:1", "--dim", "60", "--out", path_str(&m)]);
    let matrix = stdout(&focklab(&["berezin", "--in", path_str(&m), "--points", path_str(&pts)]));
    let re = |s: &str| -> Vec<f64> { s.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect() };
    let (a, b) = (re(&series), re(&matrix));
    assert_eq!(a.len(), 2);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10);
    }
    // At the origin the transform of the unit-disc indicator is 1 - e^{-1/t}.
    let origin = stdout(&focklab(&["berezin", "--symbol", "radial:ind:1", "--points", "0"]));
    let v: f64 = origin.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - (1.0 - (-0.5f64).exp())).abs() < 1e-12);
}

#[test]
fn config_file_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"t": 1.0, "counterexample_dim": 30}"#).unwrap();
    let out = dir.path().join("t.csv");
    let o = focklab(&["--config", path_str(&cfg), "counterexample", "--radii", "1", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["t"], 1.0);
    assert_eq!(manifest["config"]["dim"], 30);
}

#[test]
fn selftest_passes() {
    let o = focklab(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    let checks: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(checks.as_array().unwrap().iter().all(|c| c["passed"] == true));
}
