//! Command-line front end.
//!
//! Exit status: 0 all checks pass, 1 a check was violated, 2 usage or parse
//! error, 3 insufficient data.

pub mod document;
pub mod figure;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::exact_poly;
use crate::spectral::CUBIC_RELATIVE_TOLERANCE;
use crate::verify::{self, FuzzConfig, VerifyError};
use document::{format_float, PolygonDocument};
use figure::{render_figure, FigureSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INSUFFICIENT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Parser)]
#[command(name = "midpoly", version, about = "Midpoint iteration of polygons and hexagon centroid lines")]
pub struct Cli {
    /// Arithmetic used by `iterate`.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Seed for `fuzz`.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Number of midpoint steps (default depends on the command).
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Write the report (or SVG) here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Relative tolerance for floating-point checks.
    #[arg(long, global = true, default_value_t = CUBIC_RELATIVE_TOLERANCE)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every midpoint iterate of a polygon.
    Iterate {
        /// Polygon document, or `-` for standard input.
        input: PathBuf,
    },
    /// Check that the centroids G_1..G_N of a hexagon are colinear.
    Verify { input: PathBuf },
    /// Run the seeded random hexagon campaign.
    Fuzz {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
    },
    /// Check the non-colinear counterexample for m = 5 or m >= 7.
    Proposition {
        #[arg(long, short)]
        m: usize,
    },
    /// Render the iterated hexagon as SVG.
    Figure {
        input: PathBuf,
        #[arg(long)]
        no_line: bool,
        #[arg(long)]
        no_centroids: bool,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
    },
}

/// A failed command: exit status plus message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

fn from_verify(e: VerifyError) -> Failure {
    match e {
        VerifyError::InsufficientData => Failure { code: EXIT_INSUFFICIENT, message: e.to_string() },
        other => usage(other),
    }
}

/// Finished command: status plus the text to emit.
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn load_document(path: &Path) -> Result<PolygonDocument, Failure> {
    PolygonDocument::parse(&read_input(path)?).map_err(usage)
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn status_name(code: i32) -> &'static str {
    match code {
        EXIT_PASS => "pass",
        EXIT_VIOLATION => "violation",
        EXIT_INSUFFICIENT => "insufficient_data",
        _ => "error",
    }
}

pub fn cmd_iterate(doc: &PolygonDocument, steps: usize, mode: Mode) -> Result<Outcome, Failure> {
    let iterates: Vec<serde_json::Value> = match mode {
        Mode::Exact => {
            let p = doc.to_exact().map_err(usage)?;
            exact_poly::iterate(&p, steps)
                .iter()
                .enumerate()
                .map(|(n, q)| json!({ "n": n, "vertices": q.vertices() }))
                .collect()
        }
        Mode::Float => {
            let mut p = doc.to_float().map_err(usage)?;
            let mut out = Vec::with_capacity(steps + 1);
            for n in 0..=steps {
                let vertices: Vec<[String; 2]> =
                    p.vertices().iter().map(|v| [format_float(v.re), format_float(v.im)]).collect();
                out.push(json!({ "n": n, "vertices": vertices }));
                p = p.midpoint_map();
            }
            out
        }
    };
    let body = to_json(&json!({
        "schema": "midpoly.iterate/1",
        "mode": mode,
        "steps": steps,
        "iterates": iterates,
    }));
    Ok(Outcome { code: EXIT_PASS, body })
}

pub fn cmd_verify(doc: &PolygonDocument, steps: usize) -> Result<Outcome, Failure> {
    let p = doc.to_exact().map_err(usage)?;
    let report = verify::verify_hexagon_theorem(&p, steps).map_err(from_verify)?;
    let code = if report.passed() { EXIT_PASS } else { EXIT_VIOLATION };
    let monotonicity = verify::convergence_diagnostics(&p, steps).ok();
    let body = to_json(&json!({
        "schema": "midpoly.verify/1",
        "status": status_name(code),
        "steps": steps,
        "colinearity": report,
        "convergence": monotonicity,
    }));
    Ok(Outcome { code, body })
}

pub fn cmd_fuzz(config: &FuzzConfig) -> Result<Outcome, Failure> {
    let summary = verify::fuzz_hexagons(config).map_err(usage)?;
    let code = if summary.passed() { EXIT_PASS } else { EXIT_VIOLATION };
    let body = to_json(&json!({
        "schema": "midpoly.fuzz/1",
        "status": status_name(code),
        "summary": summary,
    }));
    Ok(Outcome { code, body })
}

pub fn cmd_proposition(m: usize, steps: usize, tolerance: f64) -> Result<Outcome, Failure> {
    let report = verify::verify_proposition(m, steps, tolerance).map_err(from_verify)?;
    let code = if report.passed() { EXIT_PASS } else { EXIT_VIOLATION };
    let body = to_json(&json!({
        "schema": "midpoly.proposition/1",
        "status": status_name(code),
        "report": report,
    }));
    Ok(Outcome { code, body })
}

pub fn cmd_figure(doc: &PolygonDocument, spec: &FigureSpec) -> Result<Outcome, Failure> {
    let p = doc.to_exact().map_err(usage)?;
    let body = render_figure(&p, spec).map_err(usage)?;
    Ok(Outcome { code: EXIT_PASS, body })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Iterate { input } => cmd_iterate(&load_document(input)?, cli.steps.unwrap_or(1), cli.mode),
        Command::Verify { input } => cmd_verify(&load_document(input)?, cli.steps.unwrap_or(12)),
        Command::Fuzz { trials, bound } => cmd_fuzz(&FuzzConfig {
            seed: cli.seed,
            trials: *trials as usize,
            coordinate_bound: *bound,
            steps: cli.steps.unwrap_or(12),
        }),
        Command::Proposition { m } => cmd_proposition(*m, cli.steps.unwrap_or(10), cli.tolerance),
        Command::Figure { input, no_line, no_centroids, width, height } => {
            if cli.output.is_none() {
                return Err(usage("figure needs --output <FILE>"));
            }
            let spec = FigureSpec {
                steps: cli.steps.unwrap_or(13),
                show_line: !no_line,
                show_centroids: !no_centroids,
                width: *width,
                height: *height,
                ..FigureSpec::default()
            };
            cmd_figure(&load_document(input)?, &spec)
        }
    }
}

/// Parses `args` and runs the command, returning the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(outcome.body.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
