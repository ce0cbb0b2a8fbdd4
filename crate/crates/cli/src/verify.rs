//! `cseig verify`: recheck a report's eigenpairs against the matrix.

use cseig::spectrum::pair_residuals;
use std::path::PathBuf;

use crate::report::SpectrumReport;
use crate::{matrix_file, CliError, Result};

#[derive(Debug, Clone, clap::Args)]
pub struct VerifyArgs {
    pub matrix: PathBuf,
    /// JSON report produced by `cseig spectrum --vectors`.
    pub report: PathBuf,
    /// Largest accepted `‖Ax − λx‖₂ / (‖A‖_F ‖x‖₂)`.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub residuals: Vec<f64>,
    pub tol: f64,
}

impl VerifyReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Indices of eigenpairs whose residual exceeds the tolerance.
    pub fn failures(&self) -> Vec<usize> {
        (0..self.residuals.len()).filter(|&j| self.residuals[j].is_nan() || self.residuals[j] > self.tol).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "{verdict}: {} eigenpairs, max residual {:.3e}, tol {:.3e}, {} over tolerance",
            self.residuals.len(),
            self.max_residual(),
            self.tol,
            self.failures().len()
        )
    }
}

pub fn check(a: &cseig::CSMatrix, report: &SpectrumReport, tol: f64) -> Result<VerifyReport> {
    if report.n != a.order() {
        return Err(CliError::Report(format!("report is for n = {}, matrix has n = {}", report.n, a.order())));
    }
    let vectors = report.eigenvector_matrix()?;
    let residuals = pair_residuals(a, &report.eigenvalues(), &vectors)?;
    Ok(VerifyReport { residuals, tol })
}

/// Returns the residual report; an over-tolerance pair is an error so the
/// binary exits nonzero.
pub fn run(args: &VerifyArgs) -> Result<VerifyReport> {
    let a = matrix_file::read(&args.matrix)?;
    let report = SpectrumReport::from_json(&crate::read_file(&args.report)?)?;
    let result = check(&a, &report, args.tol)?;
    if result.passed() {
        Ok(result)
    } else {
        Err(CliError::Verification(result.summary()))
    }
}
