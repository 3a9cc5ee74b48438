//! `folcoh`: command-line front end for the foliated-cohomology engine.
//!
//! Every command reads a JSON job spec, runs the exact computation,
//! re-verifies the result by substitution, and writes a JSON report
//! atomically. Exit codes: 0 success (all cross-checks pass), 1 invalid
//! spec or input, 2 precondition violation (non-cocycle, non-closed
//! form, non-flat potential, oracle mismatch), 3 internal verification
//! residual nonzero (must never occur).

mod commands;
mod jobs;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
    pub extra: Value,
}

#[derive(Parser)]
#[command(
    name = "folcoh",
    about = "Exact foliated cohomology of linear integrable-system models",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct JobArgs {
    /// JSON job spec
    #[arg(long)]
    spec: PathBuf,
    /// Output JSON path (falls back to the spec's "out" field)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized tooling; the bundled commands are
    /// deterministic and ignore it
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology dimensions, generators and the combinatorial oracle
    Cohomology(JobArgs),
    /// Split f = f_i + X_i(F_i) along one basis field
    Decompose(JobArgs),
    /// Solve g_i = f_i + X_i(G) for a deformation cocycle
    Deformation(JobArgs),
    /// Primitive of a closed foliated form on the regular model
    Primitive(JobArgs),
    /// Residual of the homotopy identity on the regular model
    #[command(name = "homotopy-check")]
    HomotopyCheck(JobArgs),
    /// Flat section of a leafwise-flat connection potential
    #[command(name = "kostant-flat")]
    KostantFlat(JobArgs),
}

fn read_spec(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError {
        code: 1,
        kind: "io".into(),
        message: format!("cannot read spec `{}`: {e}", path.display()),
        extra: Value::Null,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError {
        code: 1,
        kind: "invalid_spec".into(),
        message: format!("spec is not valid JSON: {e}"),
        extra: Value::Null,
    })
}

fn output_path(args: &JobArgs, spec: &Value) -> Result<PathBuf, CliError> {
    if let Some(out) = &args.out {
        return Ok(out.clone());
    }
    if let Some(out) = spec.get("out").and_then(|v| v.as_str()) {
        return Ok(PathBuf::from(out));
    }
    Err(CliError {
        code: 1,
        kind: "invalid_spec".into(),
        message: "no output path: pass --out or set \"out\" in the spec".into(),
        extra: Value::Null,
    })
}

/// Writes via a temporary file in the same directory, then renames.
fn write_atomically(path: &Path, value: &Value) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError {
        code: 1,
        kind: "io".into(),
        message: format!("cannot write `{}`: {e}", path.display()),
        extra: Value::Null,
    };
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string_pretty(value).expect("serializable report");
    fs::write(&tmp, text).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)?;
    Ok(())
}

type Runner = fn(&Value) -> Result<(Value, i32), CliError>;

fn run(command: &Command) -> ExitCode {
    let (args, runner): (&JobArgs, Runner) = match command {
        Command::Cohomology(a) => (a, commands::cmd_cohomology),
        Command::Decompose(a) => (a, commands::cmd_decompose),
        Command::Deformation(a) => (a, commands::cmd_deformation),
        Command::Primitive(a) => (a, commands::cmd_primitive),
        Command::HomotopyCheck(a) => (a, commands::cmd_homotopy_check),
        Command::KostantFlat(a) => (a, commands::cmd_kostant_flat),
    };

    let spec = match read_spec(&args.spec) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("folcoh: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };
    let out_path = match output_path(args, &spec) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("folcoh: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };

    match runner(&spec) {
        Ok((report, code)) => {
            if let Err(e) = write_atomically(&out_path, &report) {
                eprintln!("folcoh: {}", e.message);
                return ExitCode::from(e.code as u8);
            }
            if code != 0 {
                eprintln!("folcoh: cross-checks failed (exit {code})");
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            let report = json!({
                "error": { "kind": e.kind, "message": e.message, "details": e.extra },
            });
            // best effort: structured errors land in the output file too
            let _ = write_atomically(&out_path, &report);
            eprintln!("folcoh: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli.command)
}
