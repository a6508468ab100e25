use std::process::Command;

fn dq(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_dq")).args(args).env_remove("DQ_THREADS").output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    dq(args).status.code().expect("exit code")
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["run", "--n", "1"]), 2);
    assert_eq!(code(&["rmatrix-check", "--n", "0"]), 2);
    assert_eq!(code(&["run", "--suites", "nope"]), 2);
    assert_eq!(code(&["orbit", "--eigenvalues", "1,1"]), 2);
    assert_eq!(code(&["flatness", "--algebra", "poly"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["diff", "/nonexistent/a.json", "/nonexistent/b.json"]), 2);
}

#[test]
fn rmatrix_check_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = dq(&["rmatrix-check", "--n", "2", "--horizon", "3", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("rmatrix: PASS"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["schema"], "dq-report/1");
    assert_eq!(report["ledger_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn diff_of_identical_and_different_reports() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let (a, b, c) = (p("a.json"), p("b.json"), p("c.json"));
    assert_eq!(code(&["run", "--suites", "rmatrix", "--max-degree", "2", "--horizon", "2", "--threads", "1", "--report", &a]), 0);
    assert_eq!(code(&["run", "--suites", "rmatrix", "--max-degree", "2", "--horizon", "2", "--threads", "4", "--report", &b]), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(code(&["diff", &a, &b]), 0);
    assert_eq!(code(&["run", "--suites", "rmatrix", "--max-degree", "2", "--horizon", "3", "--report", &c]), 0);
    let out = dq(&["diff", &a, &c]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stdout.is_empty());
}

#[test]
fn dumps() {
    let out = dq(&["qlie", "--n", "2", "--horizon", "2", "--dump", "sigma"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("9 9\n"));
    let d = dq(&["derham", "--max-k", "1", "--max-m", "1", "--dump-d", "1", "0"]);
    assert_eq!(d.status.code(), Some(0));
    assert!(String::from_utf8(d.stdout).unwrap().starts_with("3 3\n"));
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&["dump-rep", "--n", "2", "--word", "V,V*", "--out", dir.path().to_str().unwrap()]), 0);
    let index: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("index.json")).unwrap()).unwrap();
    assert_eq!(index["dim"], 4);
    assert_eq!(index["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn orbit_and_flatness_pass() {
    assert_eq!(code(&["orbit", "--n", "2", "--eigenvalues", "1,-1", "--max-degree", "3"]), 0);
    assert_eq!(code(&["flatness", "--n", "2", "--max-degree", "3", "--algebra", "both"]), 0);
}
