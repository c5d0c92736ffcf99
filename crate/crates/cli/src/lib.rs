//! JSON front end for the `cherednik` library.
//!
//! Every subcommand reads a typed input, runs the matching computation, and
//! returns a [`RunReport`]. Exit codes: 0 pass, 1 failed check or internal
//! error, 2 invalid input, 3 specialization failure, 4 suite failure.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub mod commands;
pub mod input;
pub mod suite;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_SPECIALIZATION: i32 = 3;
pub const EXIT_SUITE: i32 = 4;

pub const COMMANDS: &[&str] = &[
    "galois-bound",
    "center-verify",
    "bruteforce-center",
    "dunkl-verify",
    "fixed-ring",
    "cm-check",
    "cheb-search",
    "gwa",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub certificates: Value,
    pub status: Status,
    pub timing_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match (self.status, self.error.as_ref().map(|e| e.code.as_str())) {
            (Status::Pass, _) => EXIT_PASS,
            _ if self.command == "suite" => EXIT_SUITE,
            (_, Some("schema")) => EXIT_SCHEMA,
            (_, Some("specialization")) => EXIT_SPECIALIZATION,
            _ => EXIT_FAIL,
        }
    }

    /// The report as JSON with the timing field removed.
    pub fn without_timing(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Value::Object(map) = &mut v {
            map.remove("timing_ms");
        }
        v
    }

    pub fn to_pretty_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmdError {
    Schema(String),
    Specialization(String),
    /// A check ran and failed; certificates so far are kept.
    Failed(String, Value),
    Internal(String),
}

impl CmdError {
    fn code(&self) -> &'static str {
        match self {
            CmdError::Schema(_) => "schema",
            CmdError::Specialization(_) => "specialization",
            CmdError::Failed(..) => "fail",
            CmdError::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Schema(m)
            | CmdError::Specialization(m)
            | CmdError::Failed(m, _)
            | CmdError::Internal(m) => m,
        }
    }
}

impl From<cherednik::Error> for CmdError {
    fn from(e: cherednik::Error) -> Self {
        use cherednik::Error as E;
        let msg = e.to_string();
        match e {
            E::Specialization(_) => CmdError::Specialization(msg),
            E::NotPrime(_)
            | E::CharacteristicTooLarge(_)
            | E::Reducible(_)
            | E::BadModulus
            | E::NotMonic
            | E::MissingRoots
            | E::InvalidParameter(_)
            | E::Parse(_)
            | E::DimensionMismatch
            | E::RepeatedEigenvalues
            | E::DegreeTooLarge(_)
            | E::FieldMismatch => CmdError::Schema(msg),
            _ => CmdError::Internal(msg),
        }
    }
}

/// What a command produced: certificates and whether all checks held.
pub struct Outcome {
    pub certificates: Value,
    pub pass: bool,
}

/// Parses `input` for `command` and runs it.
pub fn run_command(command: &str, input: &Value) -> RunReport {
    let start = Instant::now();
    let result = commands::dispatch(command, input);
    let timing_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok((echo, outcome)) => RunReport {
            command: command.to_string(),
            inputs: echo,
            certificates: outcome.certificates,
            status: if outcome.pass {
                Status::Pass
            } else {
                Status::Fail
            },
            timing_ms,
            error: None,
        },
        Err(err) => {
            let (status, certificates) = match &err {
                CmdError::Failed(_, c) => (Status::Fail, c.clone()),
                _ => (Status::Error, Value::Null),
            };
            RunReport {
                command: command.to_string(),
                inputs: input.clone(),
                certificates,
                status,
                timing_ms,
                error: Some(ErrorInfo {
                    code: err.code().to_string(),
                    message: err.message().to_string(),
                }),
            }
        }
    }
}
