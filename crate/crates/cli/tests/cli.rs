use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

use cherednik_cli::{run_command, RunReport, Status, COMMANDS};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cherednik"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out: Output = bin().args(args).output().expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report)
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[test]
fn passing_run_exits_zero() {
    let (code, report) = run(&["galois-bound", "--p", "7", "--roots", "0,5"]);
    assert_eq!(code, 0);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["certificates"]["bound"], "Z/2Z");
}

#[test]
fn negative_roots_are_accepted_as_flags() {
    let (code, report) = run(&["galois-bound", "--p", "5", "--roots", "-1,4,-6"]);
    assert_eq!(code, 0);
    assert_eq!(report["certificates"]["gcd"], 3);
}

#[test]
fn schema_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"p": 7, "roots": [], "extra": 1}"#).unwrap();
    let (code, report) = run(&["galois-bound", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report["error"]["code"], "schema");

    fs::write(&path, "not json").unwrap();
    assert_eq!(
        run(&["center-verify", "--input", path.to_str().unwrap()]).0,
        2
    );
    assert_eq!(run(&["galois-bound", "--p", "6", "--roots", "0"]).0, 2);
    assert_eq!(run(&["cheb-search", "--count", "1"]).0, 2);
    assert_eq!(run(&["fixed-ring", "--n", "1"]).0, 2);
}

#[test]
fn specialization_failures_exit_three() {
    let (code, report) = run(&["galois-bound", "--p", "7", "--roots", "1/7"]);
    assert_eq!(code, 3);
    assert_eq!(report["status"], "error");
    assert_eq!(report["error"]["code"], "specialization");
}

#[test]
fn failed_check_exits_one() {
    let input = json!({ "a": [["1", "0"], ["0", "2"]], "b": [["0", "0"], ["0", "0"]] });
    let report = run_command("cm-check", &input);
    assert_eq!(report.status, Status::Fail);
    assert_eq!(report.exit_code(), 1);
    assert_eq!(report.certificates["witness"]["value"], "1");
}

#[test]
fn unknown_command_is_a_schema_error() {
    let report = run_command("no-such-command", &json!({}));
    assert_eq!(report.exit_code(), 2);
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    let args = [
        "cm-check",
        "--eigenvalues",
        "0,1,3",
        "--diagonal",
        "0,1/2,0",
        "--conjugations",
        "3",
        "--seed",
        "11",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.0, 0);
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    assert_eq!(strip(a.1), strip(b.1));
}

#[test]
fn echoed_inputs_round_trip() {
    let inputs = [
        (
            "galois-bound",
            json!({ "p": 5, "roots": [{ "kind": "algebraic", "minpoly": [-2, 0, 1], "label": "a" }, { "kind": "rational", "value": "0" }] }),
        ),
        ("dunkl-verify", json!({ "c": "1/2", "degree_bound": 4 })),
        ("fixed-ring", json!({ "n": 2, "degree_bound": 6 })),
        (
            "cheb-search",
            json!({ "minpoly": [-2, 0, 1], "count": 2, "ceiling": 50 }),
        ),
        (
            "gwa",
            json!({ "roots": [{ "kind": "rational", "value": "0" }], "op": "normalize", "a": "y*x" }),
        ),
    ];
    for (cmd, input) in inputs {
        let first = run_command(cmd, &input);
        assert_eq!(first.status, Status::Pass, "{cmd}: {:?}", first.error);
        let second = run_command(cmd, &first.inputs);
        assert_eq!(first.inputs, second.inputs, "{cmd}");
        assert_eq!(first.without_timing(), second.without_timing(), "{cmd}");
    }
}

#[test]
fn report_file_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = bin()
        .args([
            "dunkl-verify",
            "--c",
            "3",
            "--degree-bound",
            "6",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let report: RunReport = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.command, "dunkl-verify");
    assert_eq!(report.certificates["bracket_eigenvalues"][1], "7");
}

#[test]
fn every_command_has_a_corpus_case() {
    let cases: Vec<Value> = fs::read_dir(corpus())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| !p.to_string_lossy().ends_with(".expected.json"))
        .map(|p| serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap())
        .collect();
    for cmd in COMMANDS {
        assert!(
            cases.iter().any(|c| c["command"] == *cmd),
            "no case for {cmd}"
        );
    }
}

#[test]
fn shipped_corpus_passes() {
    let (code, report) = run(&["suite", corpus().to_str().unwrap()]);
    assert_eq!(code, 0, "{report:#}");
    assert_eq!(report["certificates"]["failed"], 0);
}

#[test]
fn empty_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run(&["suite", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["certificates"]["total"], 0);
}

#[test]
fn corrupted_expectation_fails_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["dunkl_c_3", "galois_p7_roots_0_5"] {
        for suffix in [".json", ".expected.json"] {
            let file = format!("{name}{suffix}");
            fs::copy(corpus().join(&file), dir.path().join(&file)).unwrap();
        }
    }
    let target = dir.path().join("galois_p7_roots_0_5.expected.json");
    let text = fs::read_to_string(&target).unwrap().replace("Z/2Z", "Z/3Z");
    fs::write(&target, text).unwrap();

    let (code, report) = run(&["suite", dir.path().to_str().unwrap()]);
    assert_eq!(code, 4);
    assert_eq!(report["certificates"]["failed"], 1);
    let message = report["error"]["message"].as_str().unwrap();
    assert!(message.contains("galois_p7_roots_0_5"), "{message}");
    assert!(!message.contains("dunkl_c_3"), "{message}");
}

#[test]
fn bless_writes_expectations() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(
        corpus().join("fixed_ring_n2.json"),
        dir.path().join("fixed_ring_n2.json"),
    )
    .unwrap();
    assert_eq!(run(&["suite", dir.path().to_str().unwrap()]).0, 4);
    assert_eq!(
        run(&["suite", dir.path().to_str().unwrap(), "--bless"]).0,
        0
    );
    assert_eq!(run(&["suite", dir.path().to_str().unwrap()]).0, 0);
}
