//! Runs the binary on the checked-in fixtures and compares with goldens.
//! Set `CELLRES_BLESS=1` to rewrite the golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellres"))
        .args(args)
        .current_dir(root())
        .env_remove("CELLRES_SEEDLESS")
        .output()
        .expect("running cellres")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, args: &[&str], code: i32) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    let path = root().join("fixtures/golden").join(name);
    let got = stdout(&o);
    if std::env::var_os("CELLRES_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(got, want, "{name} differs from its golden file");
}

const DIAG: &[&str] = &["--rays", "fixtures/hirzebruch2.json", "--mode", "lawrence", "--grading", "fixtures/pic.json"];

fn with<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(tail).copied().collect()
}

#[test]
fn resolve_diagonal_text() {
    let mut a = vec!["resolve"];
    a.extend(with(DIAG, &["--strat", "ceiling", "--format", "text"]));
    golden("resolve-diagonal.txt", &a, 0);
}

#[test]
fn resolve_point_text() {
    let a = ["resolve", "--basis", "fixtures/hirzebruch2-point.json", "--grading", "fixtures/pic-point.json", "--format", "text"];
    golden("resolve-point.txt", &a, 0);
}

#[test]
fn resolve_shifted_p1_json() {
    let a = ["resolve", "--basis", "fixtures/p1diag.json", "--strat", "ceiling", "--shift", "-1/2,0,-1/2,0", "--format", "json"];
    golden("resolve-p1-shifted.json", &a, 0);
    let v: Value = serde_json::from_str(&stdout(&run(&a))).unwrap();
    let mut gens: Vec<&str> = v["summary"]["generators"].as_array().unwrap().iter().map(|g| g["monomial"].as_str().unwrap()).collect();
    gens.sort();
    assert_eq!(gens, ["1", "y2/y1"]);
}

#[test]
fn resolve_fh_text_and_m2() {
    golden("resolve-fh-p2.txt", &["resolve", "--builtin", "fh-p2", "--format", "text"], 0);
    golden("resolve-fh-p2.m2", &["resolve", "--builtin", "fh-p2", "--format", "m2"], 0);
}

#[test]
fn verify_exit_codes() {
    let mut a = vec!["verify"];
    a.extend(with(DIAG, &["--strat", "ceiling"]));
    golden("verify-diagonal-ceiling.json", &a, 0);

    let mut a = vec!["verify"];
    a.extend(with(DIAG, &["--strat", "anderson"]));
    golden("verify-anderson.json", &a, 1);
    let v: Value = serde_json::from_str(&stdout(&run(&a))).unwrap();
    assert_eq!(v["pass"], Value::Bool(false));
    let failures = v["scan"]["failures"].as_array().unwrap();
    // (1,0,1,-1,0,0,0,1) minus this degree is (1,1,1,-1,-1,-1,-1,1), which lies in L.
    assert!(failures.iter().any(|f| f["degree"] == serde_json::json!([0, -1, 0, 0, 1, 1, 1, 0])));

    let mut a = vec!["verify"];
    a.extend(with(DIAG, &["--strat", "anderson", "--epsilon", "1/100"]));
    golden("verify-anderson-epsilon.json", &a, 0);
}

#[test]
fn closure_listings() {
    golden("closure-diagonal.txt", &["closure", "--rays", "fixtures/hirzebruch2.json", "--format", "text"], 0);
    golden("closure-zero.txt", &["closure", "--basis", "fixtures/zero.json", "--format", "text"], 0);
    golden("closure-nonsat.txt", &["closure", "--basis", "fixtures/nonsat.json", "--format", "text"], 0);
}

#[test]
fn export_and_info() {
    golden("export-p1-shifted.json", &["export", "--basis", "fixtures/p1diag.json", "--shift", "-1/2,0,-1/2,0"], 0);
    golden("info-toric.json", &["info", "--embedding", "fixtures/hirzebruch2-toric.json"], 0);
    golden("info-line.json", &["info", "--basis", "fixtures/line.json"], 0);
}

#[test]
fn toric_and_direct_inputs_agree() {
    let a = stdout(&run(&["export", "--embedding", "fixtures/hirzebruch2-toric.json"]));
    let b = stdout(&run(&["export", "--basis", "fixtures/hirzebruch2-point.json"]));
    let (a, b): (Value, Value) = (serde_json::from_str(&a).unwrap(), serde_json::from_str(&b).unwrap());
    assert_eq!(a["complex"]["counts"], b["complex"]["counts"]);
}

#[test]
fn deterministic_output() {
    let a = ["resolve", "--builtin", "fh-p2", "--format", "json"];
    assert_eq!(stdout(&run(&a)), stdout(&run(&a)));
    let seedless = Command::new(env!("CARGO_BIN_EXE_cellres"))
        .args(a)
        .current_dir(root())
        .env("CELLRES_SEEDLESS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&seedless), stdout(&run(&a)));
}

#[test]
fn non_pointed_needs_window() {
    let o = run(&["verify", "--basis", "fixtures/line.json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scan"], Value::Null);
    let o = run(&["verify", "--basis", "fixtures/line.json", "--window", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scan"]["ok"], Value::Bool(true));
}

#[test]
fn errors_are_reported() {
    let o = run(&["resolve", "--basis", "fixtures/hirzebruch2-point.json", "--strat", "anderson"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Lawrence"));
    let o = run(&["resolve", "--basis", "fixtures/p1diag.json", "--shift", "1/2,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["resolve", "--basis", "fixtures/missing.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("cellres-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fh.txt");
    let p = path.to_str().unwrap();
    let o = run(&["resolve", "--builtin", "fh-p2", "--format", "text", "--out", p]);
    assert!(o.status.success() && o.stdout.is_empty());
    let want = std::fs::read_to_string(Path::new(&root()).join("fixtures/golden/resolve-fh-p2.txt")).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), want);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_only_on_request() {
    let mut a = vec!["verify"];
    a.extend(with(DIAG, &["--strat", "ceiling"]));
    let v: Value = serde_json::from_str(&stdout(&run(&a))).unwrap();
    assert!(v.get("runtime_ms").is_none());
    a.push("--timing");
    let v: Value = serde_json::from_str(&stdout(&run(&a))).unwrap();
    assert!(v["runtime_ms"].is_u64());
}
