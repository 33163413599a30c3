//! `lrcpir`: build LRCs, construct and check their erasure-pattern matrices,
//! and report MDS-PIR capacity verdicts.
//!
//! Exit status: 0 on success, 1 when a check or verdict comes out negative,
//! 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use lrcpir::capacity::to_decimal;
use lrcpir::ematrix::{brute_force_search, DEFAULT_SEARCH_BUDGET};
use lrcpir::format::{load_code, lrc_to_json, LoadedCode};
use lrcpir::gf::smallest_binary_field;
use lrcpir::{
    c_asymptotic, c_finite, check_compliance, construct, parity_splitting, parse_field, validate, verdict,
    BinaryMatrix, CapacityQuery, FileCount,
};

#[derive(Parser, Debug)]
#[command(name = "lrcpir", version, about = "LRC construction and MDS-PIR capacity certificates")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a parity-splitting LRC from a Reed-Solomon parent and emit its descriptor.
    Construct {
        #[arg(long = "n-prime")]
        n_prime: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        delta: usize,
        /// Field literal, e.g. `GF(2^4):poly=[1,0,0,1,1]`; defaults to the smallest large-enough GF(2^m).
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a code descriptor is a compliant distance-optimal LRC.
    Check {
        #[arg(long)]
        code: PathBuf,
    },
    /// Construct the erasure-pattern matrix E for an LRC.
    Ematrix {
        #[arg(long)]
        code: PathBuf,
        /// Write the swap trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a 0/1 matrix against a code.
    Validate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Exhaustive search for any valid E.
    SearchE {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite and asymptotic MDS-PIR capacity.
    Capacity {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        files: Option<u64>,
    },
    /// Capacity-achievability verdict, with the witness E written to `--out`.
    Verdict {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum distance of a code.
    Dmin {
        #[arg(long)]
        code: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load(path: &Path) -> Result<LoadedCode> {
    load_code(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn matrix_rows(e: &BinaryMatrix) -> Vec<String> {
    e.to_text().lines().map(str::to_owned).collect()
}

#[derive(Serialize)]
struct MatrixOutput {
    matrix: Vec<String>,
}

#[derive(Serialize)]
struct CapacityOutput {
    n: u64,
    k: u64,
    files: Option<u64>,
    c_finite: Option<String>,
    c_finite_decimal: Option<String>,
    c_asymptotic: String,
    c_asymptotic_decimal: String,
}

#[derive(Serialize)]
struct DminOutput {
    n: usize,
    k: usize,
    dmin: usize,
    bound: Option<usize>,
}

#[derive(Serialize)]
struct SearchOutput {
    found: bool,
    matrix: Option<Vec<String>>,
}

const DIGITS: usize = 6;

/// Runs one command, returning the exit status for a negative outcome as `Ok(1)`.
fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Construct { n_prime, k, r, delta, field, out } => {
            let field = match field {
                Some(lit) => parse_field(&lit)?,
                None => smallest_binary_field(n_prime)?,
            };
            let lrc = parity_splitting(&field, n_prime, k, r, delta)?;
            let desc = lrc_to_json(&lrc);
            match out {
                Some(path) => {
                    write(&path, &desc)?;
                    if !json {
                        let p = lrc.profile();
                        println!("wrote [{}, {}] LRC (r={}, delta={}) to {}", p.n, p.k, p.r, p.delta, path.display());
                    }
                }
                None => println!("{desc}"),
            }
            Ok(0)
        }
        Command::Check { code } => {
            let lrc = load(&code)?.into_lrc()?;
            let report = check_compliance(&lrc);
            if json {
                println!("{}", to_json(&report));
            } else if report.all_ok() {
                let d = report.dmin.map_or_else(|| "?".to_owned(), |d| d.to_string());
                println!("compliant: d_min = {d} (bound {})", report.dmin_bound);
            } else {
                println!("not compliant: {}", report.failures().join(", "));
            }
            Ok(if report.all_ok() { 0 } else { 1 })
        }
        Command::Ematrix { code, trace, out } => {
            let lrc = load(&code)?.into_lrc()?;
            let built = construct(&lrc)?;
            let e = built.matrix.matrix();
            if let Some(path) = trace {
                write(&path, &to_json(&built.trace))?;
            }
            if let Some(path) = &out {
                write(path, &e.to_text())?;
            }
            if json {
                println!("{}", to_json(&MatrixOutput { matrix: matrix_rows(e) }));
            } else if out.is_none() {
                print!("{}", e.to_text());
            }
            Ok(0)
        }
        Command::Validate { code, matrix } => {
            let code = load(&code)?;
            let e = BinaryMatrix::from_text(&read(&matrix)?)?;
            let report = validate(&e, code.linear())?;
            if json {
                println!("{}", to_json(&report));
            } else {
                println!("target weight: {}", report.target_weight);
                println!("row weights: {:?}", report.row_weights);
                println!("column weights: {:?}", report.col_weights);
                println!("rows correctable: {:?}", report.row_correctable);
                println!("verdict: {}", if report.verdict { "valid" } else { "invalid" });
            }
            Ok(if report.verdict { 0 } else { 1 })
        }
        Command::SearchE { code, budget, out } => {
            let code = load(&code)?;
            let found = brute_force_search(code.linear(), budget)?;
            if let (Some(path), Some(e)) = (&out, &found) {
                write(path, &e.to_text())?;
            }
            if json {
                println!("{}", to_json(&SearchOutput { found: found.is_some(), matrix: found.as_ref().map(matrix_rows) }));
            } else {
                match &found {
                    Some(e) => print!("{}", e.to_text()),
                    None => println!("no valid E exists"),
                }
            }
            Ok(if found.is_some() { 0 } else { 1 })
        }
        Command::Capacity { n, k, files } => {
            let count = files.map_or(FileCount::Infinite, FileCount::Finite);
            let q = CapacityQuery::new(n, k, count)?;
            let cf = c_finite(&q);
            let ca = c_asymptotic(&q);
            if json {
                println!(
                    "{}",
                    to_json(&CapacityOutput {
                        n,
                        k,
                        files,
                        c_finite: cf.as_ref().map(ToString::to_string),
                        c_finite_decimal: cf.as_ref().map(|c| to_decimal(c, DIGITS)),
                        c_asymptotic: ca.to_string(),
                        c_asymptotic_decimal: to_decimal(&ca, DIGITS),
                    })
                );
            } else {
                if let (Some(c), Some(f)) = (&cf, files) {
                    println!("C_{f} = {c} ~ {}", to_decimal(c, DIGITS));
                }
                println!("C_inf = {ca} ~ {}", to_decimal(&ca, DIGITS));
            }
            Ok(0)
        }
        Command::Verdict { code, budget, out } => {
            let lrc = load(&code)?.into_lrc()?;
            let v = verdict(&lrc, budget);
            if let (Some(path), Some(e)) = (&out, v.witness()) {
                write(path, &e.to_text())?;
            }
            if json {
                println!("{}", to_json(&v.report()));
            } else {
                println!("{v}");
            }
            Ok(if v.is_achieving() { 0 } else { 1 })
        }
        Command::Dmin { code } => {
            let loaded = load(&code)?;
            let c = loaded.linear();
            let d = c.dmin()?;
            let bound = match &loaded {
                LoadedCode::Lrc(l) => Some(l.profile().dmin_bound()),
                LoadedCode::Linear(_) => None,
            };
            if json {
                println!("{}", to_json(&DminOutput { n: c.n(), k: c.k(), dmin: d, bound }));
            } else {
                match bound {
                    Some(b) => println!("d_min = {d} (bound {b})"),
                    None => println!("d_min = {d}"),
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
