//! Argument parsing and dispatch for the `relkin` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relkin_core::Sign;

use crate::checks;
use crate::commands::{self, Op, OpInputs};
use crate::config::{Family, Format, Mode, SweepConfig};
use crate::error::{Result, EXIT_FAIL, EXIT_PASS};

#[derive(Debug, Parser)]
#[command(name = "relkin", version, about = "Reciprocity-rotated Lorentz kinematics (c = 1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relativistic velocity composition (u ± v)/(1 ± uv).
    Compose(OpArgs),
    /// Standard boost of (x, t), or of (X, t) with --vec and a vector --beta.
    Boost(OpArgs),
    /// Reciprocity rotation of a velocity (--beta), a coordinate (--x --t) or a vector (--vec).
    Rotate(OpArgs),
    /// Generalized boost through reciprocity angle phi; 3D with --vec.
    Gboost(OpArgs),
    /// Run the full invariant suite; prints a summary, or writes the full report with --out.
    Verify(RunArgs),
    /// Invariance residuals over the phi grid.
    Sweep(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SignArg {
    #[default]
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "float")]
    pub mode: Mode,
    /// Shorthand for --mode exact.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Output {
    fn mode(&self) -> Mode {
        if self.exact {
            Mode::Exact
        } else {
            self.mode
        }
    }
}

#[derive(Debug, Args)]
pub struct OpArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, value_enum, default_value = "plus")]
    pub sign: SignArg,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Velocity; a comma-separated triple in 3D.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Radians, pi, pi/2, K*pi/N, or r=P/Q / r=inf for tan(phi/2).
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi_deg: Option<String>,
    /// 3D vector X,Y,Z.
    #[arg(long, allow_hyphen_values = true)]
    pub vec: Option<String>,
    /// Reciprocity axis X,Y,Z (normalized); defaults to 1,0,0.
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 64)]
    pub phi_grid: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, env = "RELKIN_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Override every gated tolerance.
    #[arg(long, alias = "tolerance")]
    pub tol: Option<f64>,
    /// 3D configurations drawn by `sweep`.
    #[arg(long, value_enum, default_value = "general")]
    pub family: Family,
    #[command(flatten)]
    pub output: Output,
}

impl RunArgs {
    pub fn config(&self) -> SweepConfig {
        SweepConfig {
            phi_count: self.phi_grid,
            sample_count: self.samples,
            seed: self.seed,
            tolerance: self.tol,
            mode: self.output.mode(),
            family: self.family,
        }
    }
}

impl OpArgs {
    fn inputs(&self) -> OpInputs {
        OpInputs {
            u: self.u.clone(),
            v: self.v.clone(),
            sign: Some(match self.sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            }),
            x: self.x.clone(),
            t: self.t.clone(),
            beta: self.beta.clone(),
            phi: self.phi.clone(),
            phi_deg: self.phi_deg.clone(),
            vec: self.vec.clone(),
            axis: self.axis.clone(),
        }
    }
}

fn emit(out: &Output, body: &str, summary: &str, stdout: &mut impl Write) -> Result<()> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, body)?;
            stdout.write_all(summary.as_bytes())?;
        }
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Run a parsed command line; returns the exit code for a completed run.
pub fn run(cli: &Cli, stdout: &mut impl Write) -> Result<i32> {
    let (op, args) = match &cli.command {
        Command::Compose(a) => (Op::Compose, a),
        Command::Boost(a) => (Op::Boost, a),
        Command::Rotate(a) => (Op::Rotate, a),
        Command::Gboost(a) => (Op::Gboost, a),
        Command::Verify(a) | Command::Sweep(a) => {
            let cfg = a.config();
            let report = match &cli.command {
                Command::Verify(_) => checks::run_verify(&cfg)?,
                _ => checks::run_sweep(&cfg)?,
            };
            let body = match a.output.format {
                Format::Json => report.to_json()?,
                Format::Csv => report.to_csv(),
            };
            let summary = report.summary_lines();
            // A full verify report runs to tens of megabytes; without --out
            // the terminal gets the per-section summary instead.
            let body = if a.output.out.is_none() && matches!(cli.command, Command::Verify(_)) { summary.clone() } else { body };
            emit(&a.output, &body, &summary, stdout)?;
            return Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL });
        }
    };
    let result = commands::run_op(op, args.output.mode(), &args.inputs())?;
    let body = result.render(args.output.format)?;
    emit(&args.output, &body, &body, stdout)?;
    Ok(EXIT_PASS)
}
