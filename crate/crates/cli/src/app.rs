//! Command definitions and dispatch.

use std::io::Write;

use cd_eigen::*;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::format::sig12;
use crate::search::{self, Question};
use crate::suites::{self, Suite};

/// Exit status: success.
pub const EXIT_OK: u8 = 0;
/// A verification suite reported a failing check.
pub const EXIT_VERIFY_FAILED: u8 = 1;
/// Malformed expression, bad argument or out-of-range level.
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_ZERO_ELEMENT: u8 = 3;
pub const EXIT_NO_SOLUTION: u8 = 4;
/// Solver failure, I/O error or internal inconsistency.
pub const EXIT_OTHER: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "cdeigen", version, about = "Eigenvalues of multiplication in Cayley-Dickson algebras")]
pub struct Cli {
    /// Level n of the algebra A_n (dimension 2^n).
    #[arg(short = 'n', long, global = true)]
    pub level: Option<u32>,

    /// Seed for the random streams of `verify` and `search`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Instances per randomized check.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    /// Tolerance: eigenvalue clustering for `spectrum` and `decompose`,
    /// relative residual for `solve`, rank cut-off for `subalgebra`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// JSON output for commands that default to text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Include orthonormal eigenspace bases in spectra.
    #[arg(long, global = true)]
    pub bases: bool,

    /// Largest accepted level.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEVEL)]
    pub max_level: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clustered spectrum of M_a as JSON.
    Spectrum {
        expr: String,
        /// Print the matrix of M_a instead.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Split X into its components in the eigenspaces of A.
    Decompose { a: String, x: String },
    /// Solve A x = B through the eigendecomposition of B.
    Solve { a: String, b: String },
    /// Subalgebra generated by the given elements.
    Subalgebra {
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Run a randomized verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Sample eigenspace dimensions or zero-divisor spectra; CSV on stdout.
    Search {
        #[arg(value_enum)]
        question: Question,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// A failed command: exit code and the diagnostic for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn other(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_OTHER,
            message: message.to_string(),
        }
    }
}

pub fn exit_code(err: &CdError) -> u8 {
    match err {
        CdError::Parse(_)
        | CdError::IndexOutOfRange { .. }
        | CdError::LevelMismatch { .. }
        | CdError::LevelTooLow { .. }
        | CdError::LevelTooHigh { .. }
        | CdError::BadLength(_)
        | CdError::EigenvalueOutOfRange { .. }
        | CdError::Precondition(_) => EXIT_INPUT,
        CdError::ZeroElement => EXIT_ZERO_ELEMENT,
        CdError::NoSolution { .. } => EXIT_NO_SOLUTION,
        CdError::NotSymmetric { .. } | CdError::NoConvergence { .. } | CdError::Internal(_) => {
            EXIT_OTHER
        }
    }
}

impl From<CdError> for Failure {
    fn from(err: CdError) -> Self {
        Self {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::other(err)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(err: serde_json::Error) -> Self {
        Failure::other(err)
    }
}

impl From<csv::Error> for Failure {
    fn from(err: csv::Error) -> Self {
        Failure::other(err)
    }
}

/// `error` with the offending expression and a caret under `position`.
fn caret(name: &str, text: &str, err: &ParseError) -> String {
    let pad: String = text.chars().take(err.position).map(|c| if c == '\t' { '\t' } else { ' ' }).collect();
    format!("{name}: {err}\n  {text}\n  {pad}^")
}

impl Cli {
    fn level(&self) -> Result<u32, Failure> {
        let n = self
            .level
            .ok_or_else(|| Failure::input("this command needs the algebra level, -n/--level"))?;
        self.check_level(n)?;
        Ok(n)
    }

    fn check_level(&self, n: u32) -> Result<(), Failure> {
        if n > self.max_level {
            return Err(CdError::LevelTooHigh {
                level: n,
                max: self.max_level,
            }
            .into());
        }
        Ok(())
    }

    fn parse(&self, name: &str, text: &str) -> Result<Element, Failure> {
        parse_element::<f64>(text, self.level()?).map_err(|err| match &err {
            CdError::Parse(p) => Failure::input(caret(name, text, p)),
            _ => Failure {
                code: exit_code(&err),
                message: format!("{name}: {err}"),
            },
        })
    }
}

fn json_line<W: Write, S: Serialize>(out: &mut W, value: &S) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct ComponentJson {
    value: f64,
    norm: f64,
    component: Vec<f64>,
}

#[derive(Serialize)]
struct DecompositionJson {
    level: u32,
    components: Vec<ComponentJson>,
    /// ‖x − Σ x_λ‖
    residual: f64,
}

#[derive(Serialize)]
struct SolutionJson {
    level: u32,
    x: Vec<f64>,
    expression: String,
    /// ‖a x − b‖ / ‖b‖
    residual: f64,
}

/// Runs `cli`, writing machine output to `out` and warnings to `err`.
/// Returns the exit code on success (`EXIT_VERIFY_FAILED` for a failing suite).
pub fn run<W: Write, E: Write>(cli: &Cli, out: &mut W, err: &mut E) -> Result<u8, Failure> {
    if cli.max_level > DEFAULT_MAX_LEVEL {
        writeln!(
            err,
            "warning: levels above {DEFAULT_MAX_LEVEL} use dense {}-dimensional operators and may be slow",
            1u64 << DEFAULT_MAX_LEVEL.min(62)
        )?;
    }
    match &cli.command {
        Command::Spectrum { expr, dump_matrix } => {
            let a = cli.parse("expression", expr)?;
            if *dump_matrix {
                json_line(out, &m_operator(&a)?.to_json())?;
            } else {
                let tol = cli.tol.unwrap_or(tolerance::CLUSTER);
                let s = spectrum(&a, tol)?;
                json_line(out, &s.to_json(tolerance::ZERO_DIVISOR, cli.bases))?;
            }
        }
        Command::Decompose { a, x } => {
            let a = cli.parse("A", a)?;
            let x = cli.parse("X", x)?;
            let s = spectrum(&a, cli.tol.unwrap_or(tolerance::CLUSTER))?;
            let parts = s.decompose(&x);
            let mut sum = Element::zero(x.level());
            for p in &parts {
                sum += &p.component;
            }
            let residual = (&x - &sum).norm();
            if cli.json {
                let components = parts
                    .iter()
                    .map(|p| ComponentJson {
                        value: p.value,
                        norm: p.component.norm(),
                        component: p.component.coeffs().to_vec(),
                    })
                    .collect();
                json_line(
                    out,
                    &DecompositionJson {
                        level: x.level(),
                        components,
                        residual,
                    },
                )?;
            } else {
                for p in &parts {
                    writeln!(
                        out,
                        "{}\t{}\t{}",
                        sig12(p.value),
                        sig12(p.component.norm()),
                        to_expression(&p.component)
                    )?;
                }
            }
        }
        Command::Solve { a, b } => {
            let a = cli.parse("A", a)?;
            let b = cli.parse("B", b)?;
            let mut options = SolveOptions::default();
            if let Some(tol) = cli.tol {
                options.residual_tol = tol;
            }
            let x = cancel_solve_with(&a, &b, &options)?;
            let bn = b.norm();
            let residual = (&(&a * &x) - &b).norm() / if bn > 0.0 { bn } else { 1.0 };
            if cli.json {
                json_line(
                    out,
                    &SolutionJson {
                        level: x.level(),
                        expression: to_expression(&x),
                        x: x.into_coeffs(),
                        residual,
                    },
                )?;
            } else {
                writeln!(out, "{}", to_expression(&x))?;
            }
        }
        Command::Subalgebra { generators } => {
            let gens = generators
                .iter()
                .enumerate()
                .map(|(k, g)| cli.parse(&format!("generator {}", k + 1), g))
                .collect::<Result<Vec<_>, _>>()?;
            let s = generated_subalgebra(&gens, cli.tol.unwrap_or(tolerance::RANK))?;
            if cli.json {
                json_line(out, &s.to_json())?;
            } else {
                writeln!(out, "dim {}", s.dim())?;
                for v in s.basis() {
                    writeln!(out, "{}", to_expression(v))?;
                }
            }
        }
        Command::Verify { suite } => {
            let report = suites::run(*suite, cli.seed, cli.trials as usize);
            if cli.json {
                json_line(out, &report)?;
            } else {
                writeln!(out, "{report}")?;
            }
            if !report.pass {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Search { question, samples } => {
            let n = cli.level()?;
            let result = search::run(*question, n, *samples, cli.seed)?;
            if cli.json {
                json_line(out, &result)?;
            } else {
                result.write_csv(&mut *out)?;
            }
        }
    }
    Ok(EXIT_OK)
}
