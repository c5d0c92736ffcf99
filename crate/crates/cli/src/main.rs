use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use cherednik_cli::suite::run_suite;
use cherednik_cli::{run_command, ErrorInfo, RunReport, Status};

#[derive(Parser)]
#[command(
    name = "cherednik",
    version,
    about = "Certificates for generalized Weyl algebras and friends"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// JSON input file, `-` for stdin. Flags override its fields.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FieldFlags {
    #[arg(long)]
    p: Option<u64>,
    /// Comma-separated rational roots, e.g. `0,1/2,-3`.
    #[arg(long, allow_hyphen_values = true)]
    roots: Option<String>,
    /// Defining polynomial of the extension, comma-separated, low degree first.
    #[arg(long, allow_hyphen_values = true)]
    modulus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Coset partition of the roots and the resulting cyclic bound.
    GaloisBound {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        field: FieldFlags,
    },
    /// Centrality of x^p, y^p, h^p - h and their relation.
    CenterVerify {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        field: FieldFlags,
    },
    /// Linear-algebra computation of the center up to a filtration degree.
    BruteforceCenter {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        field: FieldFlags,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Dunkl operator bracket on polynomials up to a degree.
    DunklVerify {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Fixed ring of the Weyl algebra under the cyclic group of order n.
    FixedRing {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Membership and tangent dimension for Calogero-Moser matrix pairs.
    CmCheck {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        diagonal: Option<String>,
        #[arg(long)]
        conjugations: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Primes where parameters specialize well.
    ChebSearch {
        #[command(flatten)]
        io: Io,
        /// Comma-separated rational parameters.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Integer minimal polynomial, comma-separated, low degree first.
        #[arg(long, allow_hyphen_values = true)]
        minpoly: Option<String>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// Arithmetic in a generalized Weyl algebra.
    Gwa {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        field: FieldFlags,
        /// mul, commutator or normalize.
        #[arg(long)]
        op: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Run a directory of regression cases.
    Suite {
        dir: PathBuf,
        /// Rewrite the expected reports from the current output.
        #[arg(long)]
        bless: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

/// Integers stay integers; anything else is left as a string so that
/// schema validation reports it.
fn int_list(s: &str) -> Value {
    Value::Array(
        list(s)
            .into_iter()
            .map(|t| {
                t.parse::<i64>()
                    .map(Value::from)
                    .unwrap_or(Value::String(t))
            })
            .collect(),
    )
}

fn strings(s: &str) -> Value {
    json!(list(s))
}

struct Overrides(Map<String, Value>);

impl Overrides {
    fn set<T: Into<Value>>(&mut self, key: &str, v: Option<T>) {
        if let Some(v) = v {
            self.0.insert(key.to_string(), v.into());
        }
    }

    fn field(&mut self, f: FieldFlags) {
        self.set("p", f.p);
        self.set(
            "roots",
            f.roots.map(|r| {
                list(&r)
                    .into_iter()
                    .map(|v| json!({ "kind": "rational", "value": v }))
                    .collect::<Vec<_>>()
            }),
        );
        self.set("modulus", f.modulus.as_deref().map(int_list));
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Map<String, Value>, String> {
    let Some(path) = path else {
        return Ok(Map::new());
    };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| e.to_string())?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
    };
    match serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}"))? {
        Value::Object(m) => Ok(m),
        _ => Err("input must be a JSON object".into()),
    }
}

fn emit(report: &RunReport, out: &Option<PathBuf>) {
    let text = report.to_pretty_json();
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(cherednik_cli::EXIT_FAIL);
            }
        }
        None => print!("{text}"),
    }
}

fn main() {
    let cli = Cli::parse();
    let mut o = Overrides(Map::new());
    let (name, io) = match cli.command {
        Command::Suite { dir, bless, out } => {
            let report = run_suite(&dir, bless);
            emit(&report, &out);
            std::process::exit(report.exit_code());
        }
        Command::GaloisBound { io, field } => {
            o.field(field);
            ("galois-bound", io)
        }
        Command::CenterVerify { io, field } => {
            o.field(field);
            ("center-verify", io)
        }
        Command::BruteforceCenter {
            io,
            field,
            degree_bound,
        } => {
            o.field(field);
            o.set("degree_bound", degree_bound);
            ("bruteforce-center", io)
        }
        Command::DunklVerify {
            io,
            c,
            degree_bound,
        } => {
            o.set("c", c);
            o.set("degree_bound", degree_bound);
            ("dunkl-verify", io)
        }
        Command::FixedRing {
            io,
            n,
            degree_bound,
        } => {
            o.set("n", n);
            o.set("degree_bound", degree_bound);
            ("fixed-ring", io)
        }
        Command::CmCheck {
            io,
            eigenvalues,
            diagonal,
            conjugations,
            seed,
        } => {
            o.set("eigenvalues", eigenvalues.as_deref().map(strings));
            o.set("diagonal", diagonal.as_deref().map(strings));
            o.set("conjugations", conjugations);
            o.set("seed", seed);
            ("cm-check", io)
        }
        Command::ChebSearch {
            io,
            params,
            minpoly,
            count,
            ceiling,
        } => {
            o.set("params", params.as_deref().map(strings));
            o.set("minpoly", minpoly.as_deref().map(int_list));
            o.set("count", count);
            o.set("ceiling", ceiling);
            ("cheb-search", io)
        }
        Command::Gwa {
            io,
            field,
            op,
            a,
            b,
        } => {
            o.field(field);
            o.set("op", op);
            o.set("a", a);
            o.set("b", b);
            ("gwa", io)
        }
    };
    let report = match read_input(&io.input) {
        Ok(mut base) => {
            base.extend(o.0);
            run_command(name, &Value::Object(base))
        }
        Err(message) => RunReport {
            command: name.to_string(),
            inputs: Value::Null,
            certificates: Value::Null,
            status: Status::Error,
            timing_ms: 0,
            error: Some(ErrorInfo {
                code: "schema".into(),
                message,
            }),
        },
    };
    emit(&report, &io.out);
    std::process::exit(report.exit_code());
}
