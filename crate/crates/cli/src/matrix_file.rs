//! Plain-text matrix format.
//!
//! ```text
//! n
//! re11 im11 re12 im12 … re1n im1n
//! …
//! ren1 imn1 …            ren_n imn_n
//! ```
//!
//! Blank lines are ignored. Values are written with 17 significant digits so
//! every `f64` survives a round trip.

use cseig::{CMatrix, CSMatrix};
use num_complex::Complex64;
use std::fmt::Write as _;
use std::path::Path;

use crate::{CliError, Result};

/// Allowed asymmetry relative to the largest entry before a matrix is rejected.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

/// Parses the dense matrix without symmetry checks.
pub fn parse_dense(text: &str) -> Result<CMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = header.parse().map_err(|_| parse_err(first, format!("expected order, found {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (lineno, line) in lines {
        if rows.len() == n {
            return Err(parse_err(lineno, "more rows than the declared order"));
        }
        let values = line
            .split_whitespace()
            .map(|tok| tok.parse::<f64>().map_err(|_| parse_err(lineno, format!("bad number {tok:?}"))))
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != 2 * n {
            return Err(parse_err(lineno, format!("expected {} values, found {}", 2 * n, values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(parse_err(lineno, "non-finite entry"));
        }
        rows.push(values.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect::<Vec<_>>());
    }
    if rows.len() != n {
        return Err(parse_err(text.lines().count(), format!("expected {n} rows, found {}", rows.len())));
    }
    if n == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    Ok(CMatrix::from_rows(&rows)?)
}

/// Parses and symmetrizes; rejects matrices whose asymmetry exceeds
/// [`SYMMETRY_TOLERANCE`] relative to the largest entry.
pub fn parse(text: &str) -> Result<CSMatrix> {
    Ok(CSMatrix::symmetrize(parse_dense(text)?, SYMMETRY_TOLERANCE)?)
}

pub fn read(path: &Path) -> Result<CSMatrix> {
    parse(&crate::read_file(path)?)
}

pub fn emit(a: &CMatrix) -> String {
    let n = a.rows();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..a.cols()).map(|j| format!("{:.16e} {:.16e}", a[(i, j)].re, a[(i, j)].im)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write(path: &Path, a: &CMatrix) -> Result<()> {
    crate::write_file(path, &emit(a))
}
