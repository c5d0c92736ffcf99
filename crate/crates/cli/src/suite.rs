//! Regression corpus runner.
//!
//! A case is `name.json` holding `{"command", "input"}`; its expected report,
//! minus `timing_ms`, lives next to it in `name.expected.json`.

use std::fs;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use crate::input::CaseFile;
use crate::{run_command, ErrorInfo, RunReport, Status};

const EXPECTED_SUFFIX: &str = ".expected.json";

#[derive(Debug)]
struct CaseResult {
    name: String,
    ok: bool,
    detail: String,
}

fn case_names(dir: &Path) -> std::io::Result<Vec<String>> {
    let mut names: Vec<String> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .filter_map(|e| e.file_name().into_string().ok())
        .filter(|n| n.ends_with(".json") && !n.ends_with(EXPECTED_SUFFIX))
        .map(|n| n.trim_end_matches(".json").to_string())
        .collect();
    names.sort();
    Ok(names)
}

fn run_case(dir: &Path, name: &str, bless: bool) -> CaseResult {
    let fail = |detail: String| CaseResult {
        name: name.to_string(),
        ok: false,
        detail,
    };
    let text = match fs::read_to_string(dir.join(format!("{name}.json"))) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read case: {e}")),
    };
    let case: CaseFile = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => return fail(format!("malformed case: {e}")),
    };
    let actual = run_command(&case.command, &case.input).without_timing();
    let expected_path = dir.join(format!("{name}{EXPECTED_SUFFIX}"));
    if bless {
        let mut body = serde_json::to_string_pretty(&actual).expect("reports serialize");
        body.push('\n');
        return match fs::write(&expected_path, body) {
            Ok(()) => CaseResult {
                name: name.to_string(),
                ok: true,
                detail: "blessed".into(),
            },
            Err(e) => fail(format!("cannot write expected report: {e}")),
        };
    }
    let expected: Value = match fs::read_to_string(&expected_path)
        .map_err(|e| e.to_string())
        .and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string()))
    {
        Ok(v) => v,
        Err(e) => return fail(format!("expected report unusable: {e}")),
    };
    if actual == expected {
        CaseResult {
            name: name.to_string(),
            ok: true,
            detail: "match".into(),
        }
    } else {
        fail(first_difference(&expected, &actual, String::new()))
    }
}

/// Path of the first differing leaf, for the failure message.
fn first_difference(expected: &Value, actual: &Value, path: String) -> String {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                match a.get(k) {
                    Some(av) if av == ev => {}
                    Some(av) => return first_difference(ev, av, format!("{path}/{k}")),
                    None => return format!("{path}/{k}: missing from actual report"),
                }
            }
            match a.keys().find(|k| !e.contains_key(*k)) {
                Some(k) => format!("{path}/{k}: not in expected report"),
                None => format!("{path}: differs"),
            }
        }
        (Value::Array(e), Value::Array(a)) if e.len() == a.len() => {
            match e.iter().zip(a).position(|(x, y)| x != y) {
                Some(i) => first_difference(&e[i], &a[i], format!("{path}/{i}")),
                None => format!("{path}: differs"),
            }
        }
        _ => format!("{path}: expected {expected}, got {actual}"),
    }
}

/// Runs every case in `dir`. With `bless`, rewrites the expected reports instead.
pub fn run_suite(dir: &Path, bless: bool) -> RunReport {
    let start = Instant::now();
    let inputs = json!({ "dir": dir.display().to_string(), "bless": bless });
    let names = match case_names(dir) {
        Ok(n) => n,
        Err(e) => {
            return RunReport {
                command: "suite".into(),
                inputs,
                certificates: Value::Null,
                status: Status::Error,
                timing_ms: start.elapsed().as_millis() as u64,
                error: Some(ErrorInfo {
                    code: "io".into(),
                    message: format!("cannot read {}: {e}", dir.display()),
                }),
            }
        }
    };
    let results: Vec<CaseResult> = names.iter().map(|n| run_case(dir, n, bless)).collect();
    let failed: Vec<&CaseResult> = results.iter().filter(|r| !r.ok).collect();
    let cases: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "status": if r.ok { "pass" } else { "fail" },
                "detail": r.detail,
            })
        })
        .collect();
    let error = (!failed.is_empty()).then(|| ErrorInfo {
        code: "suite".into(),
        message: format!(
            "{} case(s) failed: {}",
            failed.len(),
            failed
                .iter()
                .map(|r| r.name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    });
    RunReport {
        command: "suite".into(),
        inputs,
        certificates: json!({
            "cases": cases,
            "total": results.len(),
            "passed": results.len() - failed.len(),
            "failed": failed.len(),
        }),
        status: if failed.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        timing_ms: start.elapsed().as_millis() as u64,
        error,
    }
}
