//! `cseig spectrum`: diagonalize a matrix file.

use cseig::{eigen, CSMatrix, Direction, SolverOptions};
use serde_json::json;
use std::path::PathBuf;
use std::time::Instant;

use crate::report::{Format, SpectrumReport};
use crate::{matrix_file, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DirectionArg {
    Ql,
    Qr,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Ql => Direction::Ql,
            DirectionArg::Qr => Direction::Qr,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct SpectrumArgs {
    /// Matrix file to diagonalize.
    pub input: PathBuf,
    /// Also compute eigenvectors and their residuals.
    #[arg(long)]
    pub vectors: bool,
    #[arg(long, value_enum, default_value = "ql")]
    pub direction: DirectionArg,
    /// Relative deflation tolerance (default: machine epsilon).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Sweep budget per eigenvalue.
    #[arg(long, default_value_t = 50)]
    pub max_sweeps: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl SpectrumArgs {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        SpectrumArgs {
            input: input.into(),
            vectors: false,
            direction: DirectionArg::Ql,
            tol: None,
            max_sweeps: 50,
            format: Format::Json,
            output: None,
        }
    }

    pub fn solver_options(&self) -> Result<SolverOptions> {
        let defaults = SolverOptions::default();
        let tol = self.tol.unwrap_or(defaults.tol);
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(crate::CliError::Argument(format!("--tol must be a non-negative number, got {tol}")));
        }
        Ok(SolverOptions {
            tol,
            max_sweeps: self.max_sweeps,
            direction: self.direction.into(),
            vectors: self.vectors,
            ..defaults
        })
    }
}

/// Solves `a` and packages the full spectrum.
pub fn solve(a: &CSMatrix, opts: &SolverOptions) -> Result<SpectrumReport> {
    let start = Instant::now();
    let spectrum = eigen(a, opts)?;
    let wall = start.elapsed().as_secs_f64();
    let options = json!({
        "direction": match opts.direction { Direction::Ql => "ql", Direction::Qr => "qr" },
        "tol": opts.tol,
        "max_sweeps": opts.max_sweeps,
        "vectors": opts.vectors,
    });
    let all: Vec<usize> = (0..spectrum.len()).collect();
    Ok(SpectrumReport::from_spectrum(a.order(), &spectrum, &all, options, wall, true))
}

/// Runs the command and returns the report; writing it is left to the caller
/// unless `--output` is set.
pub fn run(args: &SpectrumArgs) -> Result<SpectrumReport> {
    let opts = args.solver_options()?;
    let a = matrix_file::read(&args.input)?;
    let report = solve(&a, &opts)?;
    if let Some(path) = &args.output {
        crate::write_file(path, &report.render(args.format))?;
    }
    Ok(report)
}
