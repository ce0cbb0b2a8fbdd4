//! Brute-force eigenvalues for small matrices: characteristic polynomial by
//! the Faddeev–LeVerrier recurrence, roots by Aberth–Ehrlich iteration.
//!
//! Shares nothing with the tridiagonal solver; it exists to check it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Largest order accepted by [`char_poly`] and [`eig_small`].
pub const MAX_ORDER: usize = 12;
const MAX_ITERATIONS: usize = 500;
const STEP_TOLERANCE: f64 = 1e-14;
const POLISH_STEPS: usize = 2;

/// Monic polynomial, `coeffs[k]` multiplies `λ^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    coeffs: Vec<Complex64>,
}

impl PolyCoeffs {
    /// Builds a monic polynomial from its low-order coefficients `c₀ … c_{n−1}`.
    pub fn monic(lower: &[Complex64]) -> Self {
        let mut coeffs = lower.to_vec();
        coeffs.push(Complex64::new(1.0, 0.0));
        Self { coeffs }
    }

    /// `Π (λ − rᵢ)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &root in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &ck) in coeffs.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= root * ck;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `(p(z), p′(z), Σ |c_k| |z|^k)`; the last term bounds Horner rounding.
    fn eval(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        let zabs = z.norm();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
            bound = bound * zabs + c.norm();
        }
        (p, dp, bound)
    }
}

/// Coefficients of `det(λ𝟙 − A)`.
pub fn char_poly(a: &CMatrix) -> Result<PolyCoeffs> {
    if !a.is_square() {
        return Err(Error::OrderMismatch(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, limit: MAX_ORDER });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    // M_k = A M_{k−1} + c_{n−k+1} 𝟙,  c_{n−k} = −tr(A M_k) / k
    let mut m = CMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.matmul(&m)?;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        let am = a.matmul(&next)?;
        let trace: Complex64 = (0..n).map(|i| am[(i, i)]).sum();
        coeffs[n - k] = -trace / k as f64;
        m = next;
    }
    Ok(PolyCoeffs { coeffs })
}

/// All roots with multiplicity.
pub fn poly_roots(p: &PolyCoeffs) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::LengthMismatch { expected: 1, actual: 0 });
    }
    let c = p.coeffs();
    if n == 1 {
        return Ok(vec![-c[0]]);
    }
    let center = -c[n - 1] / n as f64;
    let (at_center, _, _) = p.eval(center);
    let mut radius = at_center.norm().powf(1.0 / n as f64);
    if !(radius.is_finite() && radius > 0.0) {
        radius = 1.0;
    }
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut settled = vec![false; n];

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..n {
            if settled[i] {
                continue;
            }
            let (pz, dpz, bound) = p.eval(z[i]);
            if pz.norm() <= 4.0 * n as f64 * f64::EPSILON * bound {
                settled[i] = true;
                continue;
            }
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        let scale = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
        if settled.iter().all(|&s| s) || max_step <= STEP_TOLERANCE * scale {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RootsNoConvergence(MAX_ITERATIONS));
    }
    for root in z.iter_mut() {
        for _ in 0..POLISH_STEPS {
            let (pz, dpz, _) = p.eval(*root);
            let candidate = *root - pz / dpz;
            if candidate.is_finite() && p.eval(candidate).0.norm() < pz.norm() {
                *root = candidate;
            }
        }
    }
    Ok(z)
}

/// Eigenvalues of a small square matrix as roots of its characteristic polynomial.
pub fn eig_small(a: &CMatrix) -> Result<Vec<Complex64>> {
    poly_roots(&char_poly(a)?)
}
