//! Anharmonic oscillator Hamiltonians in the harmonic-oscillator eigenbasis.
//!
//! Everything is assembled from the position operator `x = (a + a†)/√2`.
//! Powers of `x` are formed on a basis padded by [`GUARD_STATES`] and then
//! truncated, so each retained entry equals the exact projected operator.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, CSMatrix};

/// Extra basis states carried while forming `x²`, `x³`, `x⁴`.
pub const GUARD_STATES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// `−½∂² + ½x² + iG x³`
    ImaginaryCubic,
    /// `−½ e^{−2iθ} ∂² + ½ e^{2iθ} x² + e^{3iθ} x³`
    ComplexScaledCubic,
    /// `−½∂² + ½x² + g x⁴`
    Quartic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorModel {
    pub kind: ModelKind,
    /// `G` for the imaginary cubic, `g` for the quartic; ignored (fixed at 1)
    /// for the complex-scaled cubic.
    pub coupling: f64,
    /// Complex scaling angle in radians, `0 < θ < π/5`.
    pub theta: f64,
    pub basis_size: usize,
}

impl OscillatorModel {
    pub fn imaginary_cubic(coupling: f64, basis_size: usize) -> Result<Self> {
        Self { kind: ModelKind::ImaginaryCubic, coupling, theta: 0.0, basis_size }.validated()
    }

    pub fn complex_scaled_cubic(theta: f64, basis_size: usize) -> Result<Self> {
        Self { kind: ModelKind::ComplexScaledCubic, coupling: 1.0, theta, basis_size }.validated()
    }

    pub fn quartic(coupling: f64, basis_size: usize) -> Result<Self> {
        Self { kind: ModelKind::Quartic, coupling, theta: 0.0, basis_size }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if self.basis_size == 0 {
            return Err(Error::InvalidModel("basis size must be positive".into()));
        }
        match self.kind {
            ModelKind::ImaginaryCubic | ModelKind::Quartic => {
                if !(self.coupling.is_finite() && self.coupling > 0.0) {
                    return Err(Error::InvalidModel(format!("coupling must be > 0, got {}", self.coupling)));
                }
            }
            ModelKind::ComplexScaledCubic => {
                if !(self.theta > 0.0 && self.theta < PI / 5.0) {
                    return Err(Error::InvalidModel(format!("theta must lie in (0, π/5), got {}", self.theta)));
                }
            }
        }
        Ok(self)
    }
}

/// Matrix of `x` on the first `m` oscillator states: `x_{n,n+1} = √((n+1)/2)`.
pub fn position_matrix(m: usize) -> CSMatrix {
    CSMatrix::from_upper(m, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64 / 2.0).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `diag((−1)^n)`.
pub fn parity_matrix(n: usize) -> CSMatrix {
    let d: Vec<Complex64> = (0..n).map(|k| Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
    CSMatrix::diagonal(&d)
}

/// The model Hamiltonian on states `|0⟩ … |N−1⟩`.
pub fn build_hamiltonian(model: &OscillatorModel) -> Result<CSMatrix> {
    let model = model.validated()?;
    let n = model.basis_size;
    let guarded = n + GUARD_STATES;
    let x = position_matrix(guarded).into_matrix();
    let x2 = x.matmul(&x)?;
    let harmonic = |i: usize| i as f64 + 0.5;
    let kronecker = |i: usize, j: usize, v: f64| if i == j { v } else { 0.0 };

    let h = match model.kind {
        ModelKind::ImaginaryCubic => {
            let x3 = x2.matmul(&x)?;
            let g = Complex64::new(0.0, model.coupling);
            CSMatrix::from_upper(n, |i, j| Complex64::new(kronecker(i, j, harmonic(i)), 0.0) + g * x3[(i, j)])
        }
        ModelKind::Quartic => {
            let x4 = x2.matmul(&x2)?;
            CSMatrix::from_upper(n, |i, j| {
                Complex64::new(kronecker(i, j, harmonic(i)) + model.coupling * x4[(i, j)].re, 0.0)
            })
        }
        ModelKind::ComplexScaledCubic => {
            let x3 = x2.matmul(&x)?;
            let theta = model.theta;
            let kinetic_phase = Complex64::from_polar(1.0, -2.0 * theta);
            let potential_phase = Complex64::from_polar(1.0, 2.0 * theta);
            let cubic_phase = Complex64::from_polar(1.0, 3.0 * theta);
            CSMatrix::from_upper(n, |i, j| {
                // −½∂² = diag(n + ½) − ½x²
                let kinetic = kronecker(i, j, harmonic(i)) - 0.5 * x2[(i, j)].re;
                let potential = 0.5 * x2[(i, j)].re;
                kinetic_phase * kinetic + potential_phase * potential + cubic_phase * x3[(i, j)].re
            })
        }
    };
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityReport {
    /// Real parts sit on even states (imaginary on odd), rather than the reverse.
    pub n_even_real: bool,
    pub consistent: bool,
    /// Largest misplaced component relative to the Euclidean norm of the vector.
    pub max_violation: f64,
}

/// Checks that, after rotating the largest coefficient onto the positive real
/// axis, real parts live on one parity class and imaginary parts on the other.
pub fn parity_signature(coeffs: &[Complex64], tol: f64) -> ParityReport {
    let norm = coeffs.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    let pivot = coeffs.iter().copied().max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr())).unwrap_or_default();
    if norm == 0.0 || pivot.norm() == 0.0 {
        return ParityReport { n_even_real: true, consistent: true, max_violation: 0.0 };
    }
    let phase = pivot.conj() / pivot.norm();
    let (mut even_real_bad, mut odd_real_bad) = (0.0f64, 0.0f64);
    for (k, &c) in coeffs.iter().enumerate() {
        let c = c * phase;
        if k % 2 == 0 {
            even_real_bad = even_real_bad.max(c.im.abs());
            odd_real_bad = odd_real_bad.max(c.re.abs());
        } else {
            even_real_bad = even_real_bad.max(c.re.abs());
            odd_real_bad = odd_real_bad.max(c.im.abs());
        }
    }
    let n_even_real = even_real_bad <= odd_real_bad;
    let max_violation = even_real_bad.min(odd_real_bad) / norm;
    ParityReport { n_even_real, consistent: max_violation <= tol, max_violation }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSample {
    pub x: f64,
    pub value: Complex64,
    pub modulus: f64,
    /// Argument in `[−π, π)`.
    pub phase: f64,
}

/// Normalized oscillator eigenfunctions `φ_0(x) … φ_{count−1}(x)` by the
/// three-term Hermite-function recurrence.
pub fn hermite_functions(count: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if count > 1 {
        out.push(2f64.sqrt() * x * out[0]);
    }
    for n in 1..count.saturating_sub(1) {
        let k = n as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * x * out[n] - (k / (k + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// `ψ(x) = Σ cₙ φₙ(x)` with a modulus/phase split at each grid point.
pub fn wavefunction_samples(coeffs: &[Complex64], xs: &[f64]) -> Vec<WavefunctionSample> {
    xs.iter()
        .map(|&x| {
            let basis = hermite_functions(coeffs.len(), x);
            let value: Complex64 = coeffs.iter().zip(&basis).map(|(c, phi)| c * phi).sum();
            let mut phase = value.arg();
            if phase >= PI {
                phase = -PI;
            }
            WavefunctionSample { x, value, modulus: value.norm(), phase }
        })
        .collect()
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count).map(|k| lo + step * k as f64).collect()
        }
    }
}

/// Indices of the `k` eigenvalues of smallest modulus, in the order they appear
/// in `eigenvalues`.
///
/// Truncated complex-scaled Hamiltonians carry spurious eigenvalues far out in
/// the complex plane; the bound states and resonances sit closest to the origin.
pub fn lowest_levels(eigenvalues: &[Complex64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eigenvalues[a].norm().total_cmp(&eigenvalues[b].norm()));
    idx.truncate(k);
    idx.sort_unstable();
    idx
}

/// Convenience: `P · M · P` with `P` the parity matrix.
pub fn parity_conjugate(m: &CMatrix) -> Result<CMatrix> {
    let p = parity_matrix(m.rows()).into_matrix();
    p.matmul(m)?.matmul(&p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lowest_levels_by_modulus() {
        let ev = [c(-900.0, -400.0), c(0.6, -0.4), c(2.2, -1.5), c(4.0, -2.8)];
        assert_eq!(lowest_levels(&ev, 2), vec![1, 2]);
        assert_eq!(lowest_levels(&ev, 10).len(), 4);
    }

    #[test]
    fn position_matrix_examples() {
        let x2 = position_matrix(2);
        assert_eq!(x2[(0, 1)], c(0.5f64.sqrt(), 0.0));
        assert_eq!(x2[(1, 0)], x2[(0, 1)]);
        let x4 = position_matrix(4);
        assert!((x4[(2, 3)].re - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((0..4).all(|k| x4[(k, k)] == c(0.0, 0.0)));
    }

    #[test]
    fn harmonic_limit() {
        let h = build_hamiltonian(&OscillatorModel::quartic(1e-300, 5).unwrap()).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j { i as f64 + 0.5 } else { 0.0 };
                assert!((h[(i, j)] - c(expected, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn cubic_matrix_element() {
        let h = build_hamiltonian(&OscillatorModel::imaginary_cubic(1.0, 6).unwrap()).unwrap();
        let expected = 3.0 / (2.0 * 2f64.sqrt());
        assert!((h[(0, 1)] - c(0.0, expected)).norm() < 1e-14);
        assert!((h[(0, 1)].im - 1.06066).abs() < 1e-5);
    }

    #[test]
    fn cubic_parity_pattern() {
        let h = build_hamiltonian(&OscillatorModel::imaginary_cubic(0.7, 12).unwrap()).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let z = h[(i, j)];
                if (i + j) % 2 == 0 {
                    assert_eq!(z.im, 0.0, "({i},{j})");
                } else {
                    assert_eq!(z.re, 0.0, "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn quartic_is_real_symmetric() {
        let h = build_hamiltonian(&OscillatorModel::quartic(0.3, 10).unwrap()).unwrap();
        assert!((0..10).all(|i| (0..10).all(|j| h[(i, j)].im == 0.0)));
        assert_eq!(h.as_matrix().asymmetry(), 0.0);
    }

    #[test]
    fn complex_scaling_at_zero_angle_limit_is_real_cubic() {
        // Small θ: kinetic + potential reduce to the harmonic diagonal.
        let h = build_hamiltonian(&OscillatorModel::complex_scaled_cubic(1e-9, 8).unwrap()).unwrap();
        let x = position_matrix(8 + GUARD_STATES).into_matrix();
        let x3 = x.matmul(&x).unwrap().matmul(&x).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expected = if i == j { i as f64 + 0.5 } else { 0.0 } + x3[(i, j)].re;
                assert!((h[(i, j)] - c(expected, 0.0)).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn invalid_models_are_rejected() {
        assert!(OscillatorModel::imaginary_cubic(0.0, 8).is_err());
        assert!(OscillatorModel::quartic(-1.0, 8).is_err());
        assert!(OscillatorModel::complex_scaled_cubic(0.0, 8).is_err());
        assert!(OscillatorModel::complex_scaled_cubic(PI / 5.0, 8).is_err());
        assert!(OscillatorModel::imaginary_cubic(1.0, 0).is_err());
    }

    #[test]
    fn parity_operator_identities() {
        let p = parity_matrix(3);
        assert_eq!(p[(0, 0)], c(1.0, 0.0));
        assert_eq!(p[(1, 1)], c(-1.0, 0.0));
        assert_eq!(p[(2, 2)], c(1.0, 0.0));
        let pm = parity_matrix(7).into_matrix();
        assert_eq!(pm.matmul(&pm).unwrap(), CMatrix::identity(7));
        let x = position_matrix(7).into_matrix();
        let pxp = parity_conjugate(&x).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(pxp[(i, j)], -x[(i, j)]);
            }
        }
    }

    #[test]
    fn parity_signature_examples() {
        let e0 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let rep = parity_signature(&e0, 1e-8);
        assert!(rep.consistent && rep.n_even_real);
        let mixed = [c(0.5f64.sqrt(), 0.0), c(0.5f64.sqrt(), 0.0)];
        assert!(!parity_signature(&mixed, 1e-8).consistent);
        let swapped = [c(0.0, 0.2), c(3.0, 0.0), c(0.0, -0.1)];
        let rep = parity_signature(&swapped, 1e-12);
        assert!(rep.consistent && !rep.n_even_real);
    }

    #[test]
    fn wavefunction_examples() {
        let s = wavefunction_samples(&[c(1.0, 0.0)], &[0.0]);
        assert!((s[0].value.re - PI.powf(-0.25)).abs() < 1e-15);
        assert!((s[0].value.re - 0.7511).abs() < 1e-4);
        let s = wavefunction_samples(&[c(0.0, 0.0), c(1.0, 0.0)], &[0.0]);
        assert_eq!(s[0].value, c(0.0, 0.0));
    }

    #[test]
    fn wavefunction_is_linear_and_consistent() {
        let coeffs = [c(0.3, 0.1), c(-0.2, 0.7), c(0.05, -0.4)];
        let a = c(1.5, -2.0);
        let scaled: Vec<Complex64> = coeffs.iter().map(|z| a * z).collect();
        let xs = uniform_grid(-6.0, 6.0, 41);
        for (p, q) in wavefunction_samples(&coeffs, &xs).iter().zip(wavefunction_samples(&scaled, &xs)) {
            assert!((a * p.value - q.value).norm() < 1e-14);
            let rebuilt = Complex64::from_polar(p.modulus, p.phase);
            assert!((rebuilt - p.value).norm() <= 10.0 * f64::EPSILON * (1.0 + p.modulus));
            assert!(p.phase >= -PI && p.phase < PI);
        }
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        // Trapezoid quadrature of φ_m φ_n on a wide grid.
        let xs = uniform_grid(-12.0, 12.0, 4801);
        let h = xs[1] - xs[0];
        let table: Vec<Vec<f64>> = xs.iter().map(|&x| hermite_functions(6, x)).collect();
        for m in 0..6 {
            for n in 0..6 {
                let integral: f64 = table.iter().map(|row| row[m] * row[n]).sum::<f64>() * h;
                let expected = if m == n { 1.0 } else { 0.0 };
                assert!((integral - expected).abs() < 1e-10, "({m},{n}) {integral}");
            }
        }
    }
}
