//! perdiv: decide whether a Z^n-periodic arrangement of planes is the
//! divisor of an entire periodic function, and work with the
//! constructed models.
//!
//! Exit codes separate mathematics from plumbing: 0 is success, 2 is a
//! well-formed divisor that no entire periodic function can have
//! (decide, build, verify), and 1 is an input or consistency problem.

mod document;
mod report;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use document::DivisorDocument;
use num_complex::Complex64;
use perdiv::forms::ClassData;
use perdiv::index::{decide, divisor_index, IndexMatrix, PlaneDivisor, Verdict};
use perdiv::model::{build_model, eval_model_scaled, ConstructError, FunctionModel};
use perdiv::oracle::verify_model;
use perdiv::rat::{parse_rat, rat_to_f64};
use perdiv::selftest::{run_all, DEFAULT_SEED};
use report::{digest_hex, json_complex, json_float};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "perdiv",
    version,
    about = "Plane divisors of entire periodic functions: classify, decide, build, evaluate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Input JSON file.
    #[arg(long)]
    input: PathBuf,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify each component of a divisor document.
    Classify {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Print the index matrix of a divisor document.
    Index {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Accept or reject a divisor; reject exits 2 with a witness pair.
    Decide {
        #[command(flatten)]
        io: InputArgs,
        /// Truncation tolerance carried by the built model.
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
    },
    /// Build the function model for an acceptable divisor and emit it.
    Build {
        #[command(flatten)]
        io: InputArgs,
        /// Truncation tolerance carried by the built model.
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
    },
    /// Evaluate a serialized model (the result of build) at a point.
    Eval {
        #[command(flatten)]
        io: InputArgs,
        /// Coordinates "re,im;re,im;..." with rational or float parts.
        #[arg(long)]
        point: String,
    },
    /// Build a model and check it against its divisor.
    Verify {
        #[command(flatten)]
        io: InputArgs,
        /// Truncation tolerance carried by the built model.
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        /// Seed for the randomized verification sampling.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the acceptance criteria suite.
    Selftest {
        /// Seed for the randomized corpora.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the report to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

struct Emitted {
    result: Value,
    residuals: Option<Value>,
    exit: i32,
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    let started = Instant::now();
    let (name, out, digest, emitted) = match cli.command {
        Command::Classify { io } => {
            let (text, digest) = read_input(&io.input)?;
            let divisor = load_divisor(&text)?;
            ("classify", io.out, Some(digest), classify_cmd(&divisor))
        }
        Command::Index { io } => {
            let (text, digest) = read_input(&io.input)?;
            let divisor = load_divisor(&text)?;
            ("index", io.out, Some(digest), index_cmd(&divisor))
        }
        Command::Decide { io, eps } => {
            let (text, digest) = read_input(&io.input)?;
            let divisor = load_divisor(&text)?;
            ("decide", io.out, Some(digest), decide_cmd(&divisor, eps))
        }
        Command::Build { io, eps } => {
            let (text, digest) = read_input(&io.input)?;
            let divisor = load_divisor(&text)?;
            ("build", io.out, Some(digest), build_cmd(&divisor, eps))
        }
        Command::Eval { io, point } => {
            let (text, digest) = read_input(&io.input)?;
            let model: FunctionModel = serde_json::from_str(&text)
                .map_err(|e| format!("{}: not a serialized model: {e}", io.input.display()))?;
            let z = parse_point(&point, model.n())?;
            ("eval", io.out, Some(digest), eval_cmd(&model, &z))
        }
        Command::Verify { io, eps, seed } => {
            let (text, digest) = read_input(&io.input)?;
            let divisor = load_divisor(&text)?;
            let seed = seed.unwrap_or(DEFAULT_SEED);
            ("verify", io.out, Some(digest), verify_cmd(&divisor, eps, seed))
        }
        Command::Selftest { seed, out } => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            ("selftest", out, None, selftest_cmd(seed))
        }
    };
    let total_ms = started.elapsed().as_secs_f64() * 1e3;
    let report = report::report(name, digest, emitted.result, emitted.residuals, total_ms);
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(emitted.exit)
}

fn read_input(path: &Path) -> Result<(String, String), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let digest = digest_hex(text.as_bytes());
    Ok((text, digest))
}

fn load_divisor(text: &str) -> Result<PlaneDivisor, String> {
    let doc = DivisorDocument::parse(text).map_err(|e| e.to_string())?;
    doc.to_divisor().map_err(|e| e.to_string())
}

fn parse_point(s: &str, n: usize) -> Result<Vec<Complex64>, String> {
    let coords: Vec<&str> = s.split(';').collect();
    if coords.len() != n {
        return Err(format!(
            "--point has {} coordinates, the model needs {n}",
            coords.len()
        ));
    }
    let component = |text: &str, j: usize, which: &str| -> Result<f64, String> {
        let text = text.trim();
        if let Ok(r) = parse_rat(text) {
            return Ok(rat_to_f64(&r));
        }
        text.parse::<f64>().map_err(|_| {
            format!("--point coordinate {}: {which} part {text:?} is neither rational nor float", j + 1)
        })
    };
    coords
        .iter()
        .enumerate()
        .map(|(j, coord)| {
            let parts: Vec<&str> = coord.split(',').collect();
            if parts.len() != 2 {
                return Err(format!("--point coordinate {}: expected \"re,im\"", j + 1));
            }
            Ok(Complex64::new(
                component(parts[0], j, "real")?,
                component(parts[1], j, "imaginary")?,
            ))
        })
        .collect()
}

fn matrix_json(m: &IndexMatrix) -> Value {
    let n = m.n();
    let rows: Vec<Vec<i64>> =
        (0..n).map(|p| (0..n).map(|q| m.get(p, q)).collect()).collect();
    json!(rows)
}

fn classify_cmd(divisor: &PlaneDivisor) -> Emitted {
    let components: Vec<Value> = divisor
        .components()
        .iter()
        .map(|cf| {
            let basis: Vec<Vec<String>> = cf
                .aperp_basis()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect();
            match cf.data() {
                ClassData::L1 { k0, lambda, c_reduced } => json!({
                    "class": "L1",
                    "multiplicity": cf.mult(),
                    "direction": k0.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "scale": lambda,
                    "reduced_offset": c_reduced,
                    "span_basis": basis,
                }),
                ClassData::L2 { witness: (p, q) } => json!({
                    "class": "L2",
                    "multiplicity": cf.mult(),
                    "witness": [p + 1, q + 1],
                    "span_basis": basis,
                }),
            }
        })
        .collect();
    Emitted {
        result: json!({ "n": divisor.n(), "components": components }),
        residuals: None,
        exit: 0,
    }
}

fn index_cmd(divisor: &PlaneDivisor) -> Emitted {
    let m = divisor_index(divisor);
    Emitted {
        result: json!({ "n": divisor.n(), "matrix": matrix_json(&m) }),
        residuals: None,
        exit: 0,
    }
}

fn reject_result(p: usize, q: usize, sum: i64) -> Value {
    json!({
        "verdict": "reject",
        "witness": { "p": p + 1, "q": q + 1, "sum": sum },
    })
}

fn decide_cmd(divisor: &PlaneDivisor, eps: f64) -> Emitted {
    let decision = decide(divisor, eps);
    match decision.verdict {
        Verdict::Accept => {
            let model = decision.model.expect("accept carries a model");
            Emitted {
                result: json!({
                    "verdict": "accept",
                    "index": matrix_json(&decision.index),
                    "l1_part": decision.l1_part.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "l2_part": decision.l2_part.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "model": {
                        "n": model.n(),
                        "l1_factors": model.l1_factors().len(),
                        "l2_factors": model.l2_factors().len(),
                        "eps": model.eps(),
                    },
                }),
                residuals: None,
                exit: 0,
            }
        }
        Verdict::Reject => {
            let w = decision.witness.expect("reject carries a witness");
            Emitted { result: reject_result(w.p, w.q, w.value), residuals: None, exit: 2 }
        }
    }
}

fn build_cmd(divisor: &PlaneDivisor, eps: f64) -> Emitted {
    match build_model(divisor, eps) {
        Ok(model) => Emitted {
            result: serde_json::to_value(&model).expect("model serializes"),
            residuals: None,
            exit: 0,
        },
        Err(ConstructError::IndexObstruction { p, q, value }) => {
            Emitted { result: reject_result(p, q, value), residuals: None, exit: 2 }
        }
        Err(e) => Emitted {
            result: json!({ "error": e.to_string() }),
            residuals: None,
            exit: 1,
        },
    }
}

fn eval_cmd(model: &FunctionModel, z: &[Complex64]) -> Emitted {
    let value = eval_model_scaled(model, z);
    Emitted {
        result: json!({
            "point": z.iter().map(|w| json_complex(*w)).collect::<Vec<_>>(),
            "value": json_complex(value.to_c64()),
            "ln_magnitude": json_float(value.norm_ln()),
            "argument": json_float(value.arg()),
        }),
        residuals: None,
        exit: 0,
    }
}

fn verify_cmd(divisor: &PlaneDivisor, eps: f64, seed: u64) -> Emitted {
    let decision = decide(divisor, eps);
    if decision.verdict == Verdict::Reject {
        let w = decision.witness.expect("reject carries a witness");
        return Emitted { result: reject_result(w.p, w.q, w.value), residuals: None, exit: 2 };
    }
    let model = decision.model.expect("accept carries a model");
    let report = verify_model(&model, divisor, seed, 1e-8);
    let residuals = json!({
        "periodicity": report.periodicity,
        "zero_probes_max": report
            .zero_probes
            .iter()
            .map(|p| p.relative_magnitude)
            .fold(0.0f64, f64::max),
        "displaced_probes_min": report
            .displaced_probes
            .iter()
            .map(|p| p.relative_magnitude)
            .fold(f64::INFINITY, f64::min),
    });
    let exit = i32::from(!report.all_pass);
    Emitted {
        result: serde_json::to_value(&report).expect("verify report serializes"),
        residuals: Some(residuals),
        exit,
    }
}

fn selftest_cmd(seed: u64) -> Emitted {
    let outcomes = run_all(seed);
    let all_pass = outcomes.iter().all(|o| o.pass);
    Emitted {
        result: json!({
            "seed": seed,
            "criteria": outcomes,
            "all_pass": all_pass,
        }),
        residuals: None,
        exit: i32::from(!all_pass),
    }
}
