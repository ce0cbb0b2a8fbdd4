//! Spectrum reports in JSON or CSV.
//!
//! JSON floats are printed by `serde_json` in shortest round-trip form, so a
//! parsed report reproduces every eigenvalue bit for bit.

use cseig::{CMatrix, Spectrum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Order of the matrix that was diagonalized.
    pub n: usize,
    pub eigenvalues: Vec<ComplexValue>,
    /// Sweeps spent on each eigenvalue, aligned with `eigenvalues`.
    pub sweeps: Vec<usize>,
    /// Blocks `[lo, hi]` split off by premature zeros on the codiagonal.
    pub partitions: Vec<[usize; 2]>,
    pub max_residual: Option<f64>,
    pub precision: String,
    pub options: serde_json::Value,
    pub wall_seconds: f64,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vec<ComplexValue>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quasi_null: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl SpectrumReport {
    /// Builds a report from the columns `selection` of `spectrum`.
    pub fn from_spectrum(
        n: usize,
        spectrum: &Spectrum,
        selection: &[usize],
        options: serde_json::Value,
        wall_seconds: f64,
        include_vectors: bool,
    ) -> Self {
        let eigenvectors = spectrum
            .eigenvectors
            .as_ref()
            .filter(|_| include_vectors)
            .map(|v| selection.iter().map(|&j| v.col(j).iter().map(|&z| z.into()).collect()).collect());
        let quasi_null = if spectrum.eigenvectors.is_some() {
            selection.iter().map(|&j| spectrum.quasi_null[j]).collect()
        } else {
            Vec::new()
        };
        SpectrumReport {
            n,
            eigenvalues: selection.iter().map(|&j| spectrum.eigenvalues[j].into()).collect(),
            sweeps: selection.iter().map(|&j| spectrum.diagnostics.sweeps[j]).collect(),
            partitions: spectrum.diagnostics.partitions.iter().map(|&(lo, hi)| [lo, hi]).collect(),
            max_residual: spectrum.diagnostics.max_residual,
            precision: "f64".into(),
            options,
            wall_seconds,
            eigenvectors,
            quasi_null,
        }
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.eigenvalues.iter().map(|&z| z.into()).collect()
    }

    /// Eigenvectors as an `n × k` matrix.
    pub fn eigenvector_matrix(&self) -> Result<CMatrix> {
        let cols = self.eigenvectors.as_ref().ok_or_else(|| CliError::Report("report has no eigenvectors".into()))?;
        if cols.len() != self.eigenvalues.len() {
            return Err(CliError::Report(format!(
                "{} eigenvectors for {} eigenvalues",
                cols.len(),
                self.eigenvalues.len()
            )));
        }
        let mut m = CMatrix::zeros(self.n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != self.n {
                return Err(CliError::Report(format!("eigenvector {j} has length {}, expected {}", col.len(), self.n)));
            }
            for (i, &z) in col.iter().enumerate() {
                m[(i, j)] = z.into();
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))
    }

    /// One row per eigenvalue: `index,re,im,sweeps`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,re,im,sweeps\n");
        for (j, (z, s)) in self.eigenvalues.iter().zip(&self.sweeps).enumerate() {
            let _ = writeln!(out, "{j},{:.16e},{:.16e},{s}", z.re, z.im);
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}
