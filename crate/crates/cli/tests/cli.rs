use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistbench")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn space_dim(alg: &Value) -> u64 {
    alg["space"].as_array().unwrap().iter().map(|s| s["dim"].as_u64().unwrap()).product()
}

fn first_witness(r: &Value) -> Option<Value> {
    if r["pass"] == json!(false) && r.get("witness").is_some() && r["parts"].as_array().is_none_or(Vec::is_empty) {
        return Some(r["witness"].clone());
    }
    r["parts"].as_array()?.iter().find_map(first_witness)
}

#[test]
fn qplane_pair_verifies() {
    let o = bench(&["check", "--catalog", "qplane", "n=2", "D=1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("[PASS] normal-form oracle"));
}

#[test]
fn hexagon_counterexample_fails_with_its_witness() {
    let o = bench(&["check", "--catalog", "hexagon-counterexample", "--json"]);
    assert_eq!(code(&o), 1);
    let w = first_witness(&stdout_json(&o)).expect("witness present");
    assert_eq!(w["input"], "x⊗1*⊗x*");
    assert_eq!(w["output"], "1*⊗1*⊗1");
}

#[test]
fn verbose_witnesses_keep_more() {
    let o = bench(&["check", "--catalog", "hexagon-counterexample", "--json", "--verbose-witnesses"]);
    let r = stdout_json(&o);
    let hex = r["parts"].as_array().unwrap().iter().find(|p| p["check"] == "hexagon").unwrap();
    assert!(hex["more_witnesses"].as_array().unwrap().len() > 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&bench(&["check", bad.to_str().unwrap(), "X"])), 2);
    let ok = dir.path().join("ok.json");
    std::fs::write(&ok, r#"{"version": "1", "objects": {}}"#).unwrap();
    assert_eq!(code(&bench(&["check", ok.to_str().unwrap(), "missing"])), 2);
    assert_eq!(code(&bench(&["check", "--catalog", "no-such-entry"])), 2);
    assert_eq!(code(&bench(&["check", "--catalog", "qplane", "n"])), 2);
    assert_eq!(code(&bench(&["suite", "no-such-criterion"])), 2);
    assert_eq!(code(&bench(&["--backend", "octonion", "suite", "9"])), 2);
}

#[test]
fn drinfeld_double_builds_a_four_dimensional_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dd.json");
    let o = bench(&["build", "--catalog", "drinfeld-double", "hopf=kZ2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let alg = read_json(&out);
    assert_eq!(space_dim(&alg), 4);
    assert_eq!(alg["provenance"]["construction"], "drinfeld-double");
    assert_eq!(alg["provenance"]["inputs"]["hopf"], "kZ2");
    assert_eq!(alg["provenance"]["verified"], true);
}

#[test]
fn triple_qplane_has_cubed_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let (one, three) = (dir.path().join("one.json"), dir.path().join("three.json"));
    assert_eq!(code(&bench(&["build", "--catalog", "qplane", "n=1", "D=2", "--out", one.to_str().unwrap()])), 0);
    assert_eq!(code(&bench(&["build", "--catalog", "qplane", "n=3", "D=2", "--out", three.to_str().unwrap()])), 0);
    let f = space_dim(&read_json(&one));
    assert_eq!(space_dim(&read_json(&three)), f * f * f);
}

#[test]
fn failing_build_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.json");
    let o = bench(&["build", "--catalog", "hexagon-counterexample", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(!out.exists());
}

#[test]
fn built_algebra_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("heis.json");
    assert_eq!(code(&bench(&["build", "--catalog", "heisenberg-double", "hopf=H4", "--out", out.to_str().unwrap()])), 0);
    let doc = json!({"version": "1", "objects": {"X": read_json(&out)}});
    let path = dir.path().join("doc.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = bench(&["check", path.to_str().unwrap(), "X"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn backend_flag_overrides_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.json");
    let doc = json!({
        "version": "1",
        "backend": "rational",
        "objects": {"P": {"type": "catalog", "name": "qplane", "params": {"n": 2, "theta": "1/2"}}}
    });
    std::fs::write(&path, doc.to_string()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&bench(&["check", p, "P"])), 2);
    assert_eq!(code(&bench(&["--backend", "gaussian", "check", p, "P"])), 0);
}

#[test]
fn suite_filter_runs_the_deformation_scenarios_only() {
    let o = bench(&["suite", "section4"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("deformation"));
}

#[test]
fn float_backend_gives_the_same_pass_set() {
    let exact = stdout_json(&bench(&["suite", "2,9", "--json"]));
    let float = stdout_json(&bench(&["--backend", "float", "--epsilon", "1e-9", "suite", "2,9", "--json"]));
    let statuses = |v: &Value| v["criteria"].as_array().unwrap().iter().map(|c| c["status"].clone()).collect::<Vec<_>>();
    assert_eq!(statuses(&exact), statuses(&float));
    assert!(statuses(&exact).iter().all(|s| s == "pass"));
}

#[test]
fn catalog_lists_every_entry() {
    let o = bench(&["catalog", "list"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    for name in ["qplane", "drinfeld-double", "hexagon-counterexample", "cocycle-deformation", "one-sided-hexagon"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn document_tasks_run_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.json");
    let doc = json!({
        "version": "1",
        "scalar_backend": "gaussian",
        "objects": {
            "P": {"type": "catalog", "name": "qplane", "params": {"n": 2, "D": 1}},
            "Hex": {"type": "catalog", "name": "hexagon-counterexample"}
        },
        "tasks": [
            {"command": "build", "object": "P", "out": "p.json"},
            {"command": "check", "object": "Hex"},
            {"command": "build", "object": "Hex", "out": "never.json"}
        ]
    });
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = bench(&["run", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 1);
    let tasks = stdout_json(&o)["tasks"].as_array().unwrap().clone();
    let passes: Vec<_> = tasks.iter().map(|t| t["pass"].clone()).collect();
    assert_eq!(passes, [json!(true), json!(false), json!(false)]);
    let one = dir.path().join("one.json");
    assert_eq!(code(&bench(&["build", "--catalog", "qplane", "n=1", "D=1", "--out", one.to_str().unwrap()])), 0);
    let f = space_dim(&read_json(&one));
    assert_eq!(space_dim(&read_json(&dir.path().join("p.json"))), f * f);
    assert!(!dir.path().join("never.json").exists());

    std::fs::write(&path, json!({"version": "1", "tasks": [{"command": "check", "object": "ghost"}]}).to_string()).unwrap();
    assert_eq!(code(&bench(&["run", path.to_str().unwrap()])), 2);
}
