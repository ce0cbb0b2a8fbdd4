//! `cseig bench`: timing of the two solver phases on random matrices.
//!
//! Matrices come from ChaCha8 streams keyed by `(seed, size)`, entries with
//! independent real and imaginary parts uniform in `[−1, 1]`. Trials run
//! serially.

use cseig::tql::iterate_tridiagonal;
use cseig::{tridiagonalize, CSMatrix, SolverOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::time::Instant;

use crate::{CliError, Result};

pub const PHASES: [&str; 2] = ["tridiagonalize", "ql"];

#[derive(Debug, Clone, clap::Args)]
pub struct BenchArgs {
    /// Comma-separated matrix orders.
    #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Timed repetitions per size; the median is reported.
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub phase: &'static str,
    pub median_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// SHA-256 over the bit patterns of every matrix generated for a size.
    pub digests: Vec<(usize, String)>,
    /// Least-squares slope of `ln t` against `ln n`, per phase.
    pub exponents: Vec<(&'static str, Option<f64>)>,
}

/// The `trial`-th matrix of order `n` for `seed`.
pub fn random_matrices(n: usize, seed: u64, trials: usize) -> Vec<CSMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    (0..trials).map(|_| CSMatrix::random(n, &mut rng)).collect()
}

pub fn digest(matrices: &[CSMatrix]) -> String {
    let mut hasher = Sha256::new();
    for a in matrices {
        let m = a.as_matrix();
        for j in 0..m.cols() {
            for z in m.col(j) {
                hasher.update(z.re.to_bits().to_le_bytes());
                hasher.update(z.im.to_bits().to_le_bytes());
            }
        }
    }
    hex::encode(hasher.finalize())
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Slope of the least-squares line through `(ln x, ln y)`; `None` with fewer
/// than two distinct sizes.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (pts.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

pub fn run(args: &BenchArgs) -> Result<BenchReport> {
    if args.trials == 0 || args.sizes.is_empty() {
        return Err(CliError::Argument("need at least one size and one trial".into()));
    }
    let opts = SolverOptions::default();
    let mut rows = Vec::new();
    let mut digests = Vec::new();
    for &n in &args.sizes {
        let matrices = random_matrices(n, args.seed, args.trials);
        digests.push((n, digest(&matrices)));
        let mut times = [Vec::new(), Vec::new()];
        for a in &matrices {
            let start = Instant::now();
            let (t, _) = tridiagonalize(a, false)?;
            times[0].push(start.elapsed().as_secs_f64());
            let start = Instant::now();
            iterate_tridiagonal(&t, &opts, None)?;
            times[1].push(start.elapsed().as_secs_f64());
        }
        for (phase, t) in PHASES.iter().zip(times) {
            rows.push(BenchRow { size: n, phase, median_seconds: median(t) });
        }
    }
    let exponents = PHASES
        .iter()
        .map(|&phase| {
            let pts: Vec<(f64, f64)> =
                rows.iter().filter(|r| r.phase == phase).map(|r| (r.size as f64, r.median_seconds)).collect();
            (phase, loglog_slope(&pts))
        })
        .collect();
    Ok(BenchReport { rows, digests, exponents })
}

impl BenchReport {
    pub fn exponent(&self, phase: &str) -> Option<f64> {
        self.exponents.iter().find(|(p, _)| *p == phase).and_then(|(_, e)| *e)
    }

    /// CSV table followed by `#` comment lines with digests and exponents.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,phase,median_seconds\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{:.6e}", r.size, r.phase, r.median_seconds);
        }
        for (n, d) in &self.digests {
            let _ = writeln!(out, "# digest,{n},{d}");
        }
        for (phase, e) in &self.exponents {
            match e {
                Some(e) => {
                    let _ = writeln!(out, "# exponent,{phase},{e:.3}");
                }
                None => {
                    let _ = writeln!(out, "# exponent,{phase},n/a");
                }
            }
        }
        out.push_str(
            "# dense Householder reduction costs Θ(n³) flops; an O(n²) figure counts only per-step vector work\n",
        );
        out
    }
}
