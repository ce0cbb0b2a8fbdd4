//! Full eigendecomposition: tridiagonalization, QL iteration, sorting and
//! eigenvector normalization.

use std::cmp::Ordering;

use num_complex::Complex64;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::indefinite::{dot_unchecked, euclidean_norm_sqr, principal_sqrt};
use crate::matrix::{CMatrix, CSMatrix};
use crate::scalar::{Real, WorkPrecision};
use crate::tql::{iterate_in, iterate_tridiagonal, RawSpectrum, SolverOptions};
use crate::tridiag::{reduce_work, Transform, TridiagonalMatrix};

/// Below this ratio `|⟨x,x⟩| / ‖x‖²` a vector is treated as quasi-null.
pub const QUASI_NULL_RATIO: f64 = 1e-6;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub total_sweeps: usize,
    /// Sweeps spent per eigenvalue, in output order.
    pub sweeps: Vec<usize>,
    /// Blocks split off at premature zeros, as inclusive diagonal ranges.
    pub partitions: Vec<(usize, usize)>,
    /// Largest `‖A x − λ x‖₂ / (‖A‖_F ‖x‖₂)` when vectors were computed.
    pub max_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    /// Column `j` pairs with `eigenvalues[j]`.
    pub eigenvectors: Option<CMatrix>,
    /// Per-vector flag: normalized to unit Euclidean norm because `⟨x,x⟩ ≈ 0`.
    pub quasi_null: Vec<bool>,
    pub diagnostics: Diagnostics,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvector(&self, j: usize) -> Option<&[Complex64]> {
        self.eigenvectors.as_ref().map(|v| v.col(j))
    }
}

pub fn eigenvalue_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Scales `x` to `⟨x,x⟩ = 1`, or to unit Euclidean norm when `x` is quasi-null,
/// then fixes the phase. Returns whether the vector was quasi-null.
///
/// Phase: the largest-magnitude entry ends up with argument in `(−π/2, π/2]`.
/// For indefinite-normalized vectors only a sign flip is used, so `⟨x,x⟩ = 1`
/// survives; quasi-null vectors are rotated so that entry is real positive.
pub fn normalize_vector(x: &mut [Complex64]) -> bool {
    let euclid = euclidean_norm_sqr(x);
    if euclid == 0.0 {
        return true;
    }
    let self_dot = dot_unchecked(x, x);
    let quasi_null = self_dot.norm() <= QUASI_NULL_RATIO * euclid;
    let scale = if quasi_null { Complex64::new(euclid.sqrt(), 0.0) } else { principal_sqrt(self_dot) };
    for xi in x.iter_mut() {
        *xi /= scale;
    }
    let pivot = x.iter().copied().max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr())).unwrap_or_default();
    let phase = if quasi_null {
        pivot.conj() / pivot.norm()
    } else if pivot.re > 0.0 || (pivot.re == 0.0 && pivot.im > 0.0) {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(-1.0, 0.0)
    };
    if phase != Complex64::new(1.0, 0.0) {
        for xi in x.iter_mut() {
            *xi *= phase;
        }
    }
    quasi_null
}

/// Diagonalizes a tridiagonal matrix.
///
/// When `acc` carries the transform `Z` of a prior reduction `T = Zᵀ A Z`,
/// the returned eigenvectors belong to the original `A`; with `Z = 𝟙` they
/// belong to `T`. With `acc = None` no vectors are computed.
pub fn eigen_tridiagonal(t: &TridiagonalMatrix, opts: &SolverOptions, acc: Option<Transform>) -> Result<Spectrum> {
    Ok(finish(iterate_tridiagonal(t, opts, acc)?))
}

/// Sorts the raw eigenpairs and normalizes the vectors.
fn finish(raw: RawSpectrum) -> Spectrum {
    let n = raw.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eigenvalue_order(&raw.eigenvalues[i], &raw.eigenvalues[j]));

    let eigenvalues = order.iter().map(|&i| raw.eigenvalues[i]).collect();
    let sweeps: Vec<usize> = order.iter().map(|&i| raw.sweeps[i]).collect();
    let mut quasi_null = vec![false; n];
    let eigenvectors = raw.vectors.map(|z| {
        let z = z.into_matrix();
        let mut out = CMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            out.col_mut(dst).copy_from_slice(z.col(src));
            quasi_null[dst] = normalize_vector(out.col_mut(dst));
        }
        out
    });
    Spectrum {
        eigenvalues,
        eigenvectors,
        quasi_null,
        diagnostics: Diagnostics {
            total_sweeps: sweeps.iter().sum(),
            sweeps,
            partitions: raw.partitions,
            max_residual: None,
        },
    }
}

/// Reduction and iteration in precision `R`; `T` and `Z` never leave it.
fn solve_in<R: Real>(a: &CSMatrix, opts: &SolverOptions) -> Result<RawSpectrum> {
    let reduced = reduce_work::<R>(a, opts.vectors)?;
    let raw = iterate_in(reduced.d, reduced.e, opts, reduced.z)?;
    Ok(raw.lowered(|z| Transform::from_matrix(z.lower()).expect("square")))
}

/// `‖A x − λ x‖₂ / (‖A‖_F ‖x‖₂)` for each eigenpair (column `j` of `vectors`).
pub fn pair_residuals(a: &CSMatrix, eigenvalues: &[Complex64], vectors: &CMatrix) -> Result<Vec<f64>> {
    let n = a.order();
    if vectors.rows() != n || vectors.cols() != eigenvalues.len() {
        return Err(Error::OrderMismatch(n, vectors.rows()));
    }
    let norm = a.frobenius_norm();
    eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &lambda)| {
            let x = vectors.col(j);
            let ax = a.as_matrix().matvec(x)?;
            let res: f64 = ax.iter().zip(x).map(|(p, q)| (p - lambda * q).norm_sqr()).sum::<f64>().sqrt();
            let denom = norm * euclidean_norm_sqr(x).sqrt();
            Ok(if denom == 0.0 { res } else { res / denom })
        })
        .collect()
}

/// Largest of [`pair_residuals`]; zero for an empty spectrum.
pub fn max_residual(a: &CSMatrix, eigenvalues: &[Complex64], vectors: &CMatrix) -> Result<f64> {
    Ok(pair_residuals(a, eigenvalues, vectors)?.into_iter().fold(0.0, f64::max))
}

/// Eigenvalues, and optionally eigenvectors, of a complex symmetric matrix.
pub fn eigen(a: &CSMatrix, opts: &SolverOptions) -> Result<Spectrum> {
    let raw = match opts.precision {
        WorkPrecision::Double => solve_in::<f64>(a, opts)?,
        WorkPrecision::DoubleDouble => solve_in::<TwoFloat>(a, opts)?,
    };
    let mut spectrum = finish(raw);
    if let Some(v) = spectrum.eigenvectors.as_ref() {
        spectrum.diagnostics.max_residual = Some(max_residual(a, &spectrum.eigenvalues, v)?);
    }
    Ok(spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_standard_basis() {
        let opts = SolverOptions { vectors: true, ..SolverOptions::default() };
        let s = eigen(&CSMatrix::identity(4), &opts).unwrap();
        assert_eq!(s.eigenvalues, vec![c(1.0, 0.0); 4]);
        assert_eq!(s.eigenvectors.unwrap(), CMatrix::identity(4));
    }

    #[test]
    fn antidiagonal_imaginary_pair() {
        let a = CSMatrix::from_upper(2, |i, j| if i == j { c(0.0, 0.0) } else { c(0.0, 1.0) });
        let s = eigen(&a, &SolverOptions::default()).unwrap();
        assert!((s.eigenvalues[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn shifted_imaginary_pair() {
        let a = CSMatrix::from_upper(2, |i, j| if i == j { c(1.0, 0.0) } else { c(0.0, 1.0) });
        let opts = SolverOptions { vectors: true, ..SolverOptions::default() };
        let s = eigen(&a, &opts).unwrap();
        assert!((s.eigenvalues[0] - c(1.0, -1.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - c(1.0, 1.0)).norm() < 1e-14);
        assert!(s.diagnostics.max_residual.unwrap() < 1e-14);
    }

    #[test]
    fn normalization_fixes_sign_and_bilinear_norm() {
        let mut x = vec![c(-3.0, 0.0), c(0.0, 1.0)];
        assert!(!normalize_vector(&mut x));
        let n = dot_unchecked(&x, &x);
        assert!((n - c(1.0, 0.0)).norm() < 1e-15);
        assert!(x[0].re > 0.0);
    }

    #[test]
    fn isotropic_vector_is_flagged() {
        let mut x = vec![c(0.0, 2.0), c(1.0, 0.0), c(3f64.sqrt(), 0.0)];
        assert!(normalize_vector(&mut x));
        assert!((euclidean_norm_sqr(&x) - 1.0).abs() < 1e-15);
        assert!(x[0].im.abs() < 1e-15 && x[0].re > 0.0);
    }
}
