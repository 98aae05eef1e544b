//! Library side of the `freepick` command: argument parsing and dispatch.
//! `freepick` gives command-line access to free series evaluation, monotonicity
//! certificates, Nevanlinna representations and Herglotz models.
//!
//! Exit status: 0 when the command ran and its verdict holds, 2 when it ran
//! and the verdict is negative (refuted certificate, failed axiom check,
//! infeasible target), 1 on errors.

mod commands;
pub mod io;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "freepick", version, about = "Numerical free function calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a series at a matrix tuple.
    Eval(RunArgs),
    /// Directional derivative of a series.
    Deriv(RunArgs),
    /// Localizing-matrix certificate, sampled test and optional Choi analysis.
    Monotone(RunArgs),
    /// Minimum-norm interpolation in the coefficient Hardy space.
    Interpolate(RunArgs),
    /// Fuzz a series, representation or model against the free-function axioms.
    Axioms(RunArgs),
    /// Evaluate a Nevanlinna representation.
    RepEval(RunArgs),
    /// Classify a representation by its asymptotics along the imaginary ray.
    RepClassify(RunArgs),
    /// Evaluate a Herglotz model and its Schur transform.
    HerglotzEval(RunArgs),
    /// Coordinate-wise Cayley transform of a tuple.
    Cayley(RunArgs),
}

/// Flags shared by every command; a command reads the ones it needs.
#[derive(Args, Debug, Clone, Serialize)]
pub struct RunArgs {
    #[arg(long)]
    pub series: Option<PathBuf>,
    #[arg(long)]
    pub point: Option<PathBuf>,
    /// Direction tuple file, or `disk2half` / `half2disk` for `cayley`.
    #[arg(long)]
    pub direction: Option<String>,
    #[arg(long)]
    pub rep: Option<PathBuf>,
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Interpolation target matrix; defaults to the series evaluated at the point.
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Matrix level used for sampling.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Derivative method (block, localizing, fd) or Herglotz form (cayley, resolvent).
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long, default_value_t = freepick::nevanlinna::DEFAULT_SMAX)]
    pub smax: f64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    fn validate(&self) -> Result<(), String> {
        if !(self.tol > 0.0) {
            return Err("--tol must be positive".into());
        }
        if self.samples == 0 || self.dim == 0 {
            return Err("--samples and --dim must be positive".into());
        }
        if !(self.smax >= 1.0) {
            return Err("--smax must be at least 1".into());
        }
        Ok(())
    }
}

/// Result of one invocation: exit status plus what would go to the two
/// standard streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Invocation {
    fn error(msg: impl std::fmt::Display) -> Self {
        Invocation {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Invocation {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (name, args) = match &cli.command {
        Command::Eval(a) => ("eval", a),
        Command::Deriv(a) => ("deriv", a),
        Command::Monotone(a) => ("monotone", a),
        Command::Interpolate(a) => ("interpolate", a),
        Command::Axioms(a) => ("axioms", a),
        Command::RepEval(a) => ("rep-eval", a),
        Command::RepClassify(a) => ("rep-classify", a),
        Command::HerglotzEval(a) => ("herglotz-eval", a),
        Command::Cayley(a) => ("cayley", a),
    };
    if let Err(msg) = args.validate() {
        return Invocation::error(msg);
    }
    let result = match name {
        "eval" => commands::eval(args),
        "deriv" => commands::deriv(args),
        "monotone" => commands::monotone(args),
        "interpolate" => commands::interpolate(args),
        "axioms" => commands::axioms(args),
        "rep-eval" => commands::rep_eval(args),
        "rep-classify" => commands::rep_classify(args),
        "herglotz-eval" => commands::herglotz_eval(args),
        _ => commands::cayley_cmd(args),
    };
    match result.and_then(|outcome| io::emit(name, args, outcome)) {
        Ok((verdict, stdout)) => Invocation {
            code: if verdict { 0 } else { 2 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Invocation::error(e),
    }
}
