//! `cseig oscillator`: anharmonic-oscillator Hamiltonians in a truncated
//! harmonic-oscillator basis.

use cseig::oscillator::{build_hamiltonian, lowest_levels, uniform_grid, wavefunction_samples, OscillatorModel};
use cseig::{eigen, SolverOptions};
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use crate::report::{Format, SpectrumReport};
use crate::{CliError, Result};

/// Wavefunction samples cover `[−SAMPLE_EXTENT, SAMPLE_EXTENT]`.
pub const SAMPLE_EXTENT: f64 = 6.0;
pub const SAMPLE_POINTS: usize = 601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelArg {
    /// −½∂² + ½x² + iG x³
    Icubic,
    /// Complex-scaled cubic −½ e^{−2iθ} ∂² + ½ e^{2iθ} x² + e^{3iθ} x³.
    Ccubic,
    /// −½∂² + ½x² + g x⁴
    Quartic,
}

#[derive(Debug, Clone, clap::Args)]
pub struct OscillatorArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Coupling G (icubic) or g (quartic).
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
    /// Complex scaling angle for ccubic.
    #[arg(long, default_value_t = 0.30)]
    pub theta: f64,
    /// Number of basis states N.
    #[arg(long, default_value_t = 256)]
    pub basis: usize,
    /// How many of the lowest levels to report.
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    /// Write wavefunction samples of the reported levels as CSV.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

impl OscillatorArgs {
    pub fn new(model: ModelArg, coupling: f64, basis: usize, levels: usize) -> Self {
        OscillatorArgs { model, coupling, theta: 0.30, basis, levels, samples: None, format: Format::Json }
    }

    pub fn model(&self) -> Result<OscillatorModel> {
        Ok(match self.model {
            ModelArg::Icubic => OscillatorModel::imaginary_cubic(self.coupling, self.basis),
            ModelArg::Ccubic => OscillatorModel::complex_scaled_cubic(self.theta, self.basis),
            ModelArg::Quartic => OscillatorModel::quartic(self.coupling, self.basis),
        }?)
    }
}

pub struct OscillatorRun {
    pub report: SpectrumReport,
    /// Wavefunction CSV when samples were requested.
    pub samples: Option<String>,
}

/// Builds and solves the model. The reported levels are the `k` eigenvalues
/// closest to the origin, listed in `(re, im)` order; this skips the spurious
/// large eigenvalues a truncated complex-scaled basis produces.
pub fn run(args: &OscillatorArgs) -> Result<OscillatorRun> {
    if args.levels == 0 {
        return Err(CliError::Argument("--levels must be positive".into()));
    }
    let model = args.model()?;
    let start = Instant::now();
    let h = build_hamiltonian(&model)?;
    let opts = SolverOptions { vectors: args.samples.is_some(), ..SolverOptions::default() };
    let spectrum = eigen(&h, &opts)?;
    let wall = start.elapsed().as_secs_f64();

    let selection = lowest_levels(&spectrum.eigenvalues, args.levels);
    let options = json!({
        "model": format!("{:?}", args.model).to_lowercase(),
        "coupling": model.coupling,
        "theta": model.theta,
        "basis": model.basis_size,
        "levels": args.levels,
        "tol": opts.tol,
        "max_sweeps": opts.max_sweeps,
    });
    let report = SpectrumReport::from_spectrum(h.order(), &spectrum, &selection, options, wall, false);

    let samples = match (&args.samples, &spectrum.eigenvectors) {
        (Some(path), Some(v)) => {
            let grid = uniform_grid(-SAMPLE_EXTENT, SAMPLE_EXTENT, SAMPLE_POINTS);
            let mut csv = String::from("state_index,x,re,im,modulus,phase\n");
            for (state, &j) in selection.iter().enumerate() {
                for s in wavefunction_samples(v.col(j), &grid) {
                    let _ = writeln!(
                        csv,
                        "{state},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                        s.x, s.value.re, s.value.im, s.modulus, s.phase
                    );
                }
            }
            crate::write_file(path, &csv)?;
            Some(csv)
        }
        _ => None,
    };
    Ok(OscillatorRun { report, samples })
}
