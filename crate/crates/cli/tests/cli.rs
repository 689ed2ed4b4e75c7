use std::path::PathBuf;
use std::process::{Command, Output};

use dbk_cli::{build_space, parse_document, run};

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dbk-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn dbk(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dbk"));
    cmd.args(args).env_remove("DBK_SEED");
    if let Some(s) = seed {
        cmd.env("DBK_SEED", s);
    }
    cmd.output().unwrap()
}

#[test]
fn passing_document_exits_zero_and_writes_tables() {
    let dir = scratch("ok");
    let spec = dir.join("doc.json");
    std::fs::write(
        &spec,
        r#"{"model": "cheb2", "numerics": {"beta_grid": ["pi/4", "pi/2"]},
            "tasks": [{"task": "spectrum", "beta": "pi/4"}, {"task": "verify-rank-one"}]}"#,
    )
    .unwrap();
    let csv = dir.join("csv");
    let out = dbk(&["run", spec.to_str().unwrap(), "--csv", csv.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["summary"]["passed"], 2);
    assert_eq!(report["tasks"][0]["inputs"]["beta"]["expr"], "pi/4");
    let table = std::fs::read_to_string(csv.join("spectrum_00.csv")).unwrap();
    assert!(table.starts_with("x_k,s_beta_prime,k_diag,jump\n"));
    assert_eq!(table.lines().count(), 3);
    assert!(csv.join("rank_one_01.csv").exists());
}

#[test]
fn failing_task_exits_one_with_its_residual() {
    let dir = scratch("fail");
    let spec = dir.join("doc.json");
    std::fs::write(&spec, r#"{"model": "cheb2", "tasks": [{"task": "verify-rank-one", "betas": [0.0001]}]}"#).unwrap();
    let out = dbk(&["run", spec.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("beta-singular"));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["tasks"][0]["error"]["code"], "beta-singular");
    assert_eq!(report["tasks"][0]["inputs"]["betas"][0]["radians"], 0.0001);
}

#[test]
fn schema_violations_exit_two() {
    let dir = scratch("schema");
    for (name, body) in [
        ("field.json", "{\"model\": \"cheb2\",\n\"tasks\": [{\"task\": \"zero-free\"}]}"),
        ("model.json", r#"{"model": "chebN:0", "tasks": [{"task": "gauge"}]}"#),
        ("empty.json", r#"{"model": "cheb2", "tasks": []}"#),
    ] {
        let spec = dir.join(name);
        std::fs::write(&spec, body).unwrap();
        let out = dbk(&["run", spec.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
}

#[test]
fn seed_environment_overrides_document() {
    let dir = scratch("seed");
    let spec = dir.join("doc.json");
    std::fs::write(&spec, r#"{"model": "cheb2", "numerics": {"seed": 1}, "tasks": [{"task": "gauge", "points": 4}]}"#)
        .unwrap();
    let path = spec.to_str().unwrap();
    let a = dbk(&["run", path], None).stdout;
    let b = dbk(&["run", path], Some("1")).stdout;
    let c = dbk(&["run", path], Some("2")).stdout;
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn catalog_and_describe() {
    let out = dbk(&["catalog"], None);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("cheb2") && text.contains("zerodata"));
    let out = dbk(&["describe", "chebN:4"], None);
    assert!(String::from_utf8_lossy(&out.stdout).contains("finite"), "{:?}", out);
    assert_eq!(dbk(&["describe", "nope"], None).status.code(), Some(2));
}

#[test]
fn library_run_counts_failures() {
    let doc = parse_document(
        r#"{"model": {"jacobi": {"diag": [0.1, -0.2, 0.3], "offdiag": [0.8, 0.6]}},
            "numerics": {"seed": 5, "beta_grid": 4},
            "tasks": [{"task": "zero-free", "beta": 1.0}, {"task": "uniqueness", "beta1": 0.5, "beta2": 2.5},
                      {"task": "verify-lemmas", "draws": 5}]}"#,
    )
    .unwrap();
    let space = build_space(&doc).unwrap();
    let outcome = run(&doc, &space, 5);
    assert!(outcome.passed(), "{:?}", outcome.failures);
    assert_eq!(outcome.report.get("summary").unwrap().get("failed"), Some(&dbk_cli::json::Json::Int(0)));
}
