//! Command-line driver: loads algebras and frames, runs the verification
//! suites and writes a JSON report.
//!
//! Exit status: 0 when every asserted tolerance is met, 1 on a tolerance
//! failure, 2 on bad input or an invalid algebra.

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use commands::{Outcome, Settings};

#[derive(Parser, Debug)]
#[command(name = "e3calc", version, about = "Monogenic calculus on E3 subspaces of commutative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Bundled fixture: an algebra name (with its default frame) or a frame name
    #[arg(long, global = true)]
    fixture: Option<String>,

    /// Algebra JSON file
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,

    /// Frame JSON file for the chosen algebra
    #[arg(long, global = true)]
    frame: Option<PathBuf>,

    /// Quadrature nodes on closed curves (at least 64)
    #[arg(long, global = true, default_value_t = 4096)]
    nodes: usize,

    /// Circle radius (lambda: around the origin; formula: around the base point)
    #[arg(long, global = true, allow_hyphen_values = true)]
    radius: Option<f64>,

    /// Tolerance asserted by the command (defaults depend on the command)
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol: Option<f64>,

    /// Seed for randomized sample points
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report path (default: e3calc-<command>.json in the working directory)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check the multiplication table
    Validate,
    /// Invert zeta at sample points by both the recurrence and a linear solve
    Invert,
    /// Compute lambda on a circle around the origin
    Lambda,
    /// Evaluate the sufficient conditions for lambda = 2 pi i
    Classify,
    /// Cauchy theorem residuals on contractible loops
    VerifyCauchy,
    /// Cauchy integral formula residuals
    VerifyFormula,
    /// Run every check on every bundled fixture
    VerifyAll,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Invert => "invert",
            Command::Lambda => "lambda",
            Command::Classify => "classify",
            Command::VerifyCauchy => "verify-cauchy",
            Command::VerifyFormula => "verify-formula",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    status: &'a str,
    settings: &'a Settings,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    result: Value,
}

fn settings(cli: &Cli) -> Settings {
    Settings {
        fixture: cli.fixture.clone(),
        algebra: cli.algebra.clone(),
        frame: cli.frame.clone(),
        nodes: cli.nodes,
        radius: cli.radius,
        tol: cli.tol,
        seed: cli.seed,
    }
}

fn check_settings(s: &Settings) -> Result<(), String> {
    if s.nodes < 64 {
        return Err(format!("--nodes must be at least 64, got {}", s.nodes));
    }
    if let Some(t) = s.tol {
        if !(t > 0.0) || !t.is_finite() {
            return Err(format!("--tol must be positive, got {t}"));
        }
    }
    if let Some(r) = s.radius {
        if !(r > 0.0) || !r.is_finite() {
            return Err(format!("--radius must be positive, got {r}"));
        }
    }
    if s.fixture.is_some() && s.algebra.is_some() {
        return Err("--fixture and --algebra are mutually exclusive".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let out = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("e3calc-{name}.json")));

    let settings = settings(&cli);
    let outcome = match check_settings(&settings) {
        Ok(()) => commands::run(cli.command, &settings),
        Err(e) => Outcome::bad_input(e),
    };

    let status = match outcome.code {
        0 => "ok",
        1 => "tolerance_failure",
        _ => "error",
    };
    for line in &outcome.summary {
        println!("{line}");
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    println!("{name}: {status}");

    let report = Report {
        command: name,
        status,
        settings: &settings,
        error: outcome.error.clone(),
        result: outcome.result,
    };
    let text = match serde_json::to_string_pretty(&report) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot serialize report: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = fs::write(&out, text + "\n") {
        eprintln!("error: cannot write {}: {e}", out.display());
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code)
}
