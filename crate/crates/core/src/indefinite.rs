//! Indefinite bilinear inner product and generalized Householder reflections.
//!
//! Nothing in this module conjugates. `⟨x, y⟩ = Σ xᵢ yᵢ` can vanish for a
//! nonzero (isotropic) vector, which is exactly where the reflections break down.

use num_complex::{Complex, Complex64};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::CSMatrix;
use crate::scalar::{is_finite, lower, norm_f64, Real};

/// Breakdown threshold for `|⟨v,v⟩|` relative to the squared Euclidean norm of `v`.
pub const ISOTROPY_TOLERANCE: f64 = 100.0 * f64::EPSILON;

/// `Σ xᵢ yᵢ` with no complex conjugation.
pub fn indefinite_dot<R: Real>(x: &[Complex<R>], y: &[Complex<R>]) -> Result<Complex<R>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), actual: y.len() });
    }
    Ok(dot_unchecked(x, y))
}

pub(crate) fn dot_unchecked<R: Real>(x: &[Complex<R>], y: &[Complex<R>]) -> Complex<R> {
    x.iter().zip(y).fold(Complex::zero(), |acc, (a, b)| acc + a * b)
}

pub(crate) fn euclidean_norm_sqr<R: Real>(x: &[Complex<R>]) -> f64 {
    x.iter().map(|z| lower(*z).norm_sqr()).sum()
}

/// Principal square root with the cut on the negative real axis.
///
/// The real part of the result is non-negative; a negative real radicand
/// (including one carrying a `-0.0` imaginary part) maps to `+i√|z|`.
pub fn principal_sqrt<R: Real>(z: Complex<R>) -> Complex<R> {
    let zero = R::zero();
    if z.re == zero && z.im == zero {
        return Complex::zero();
    }
    let half = R::from_f64(0.5);
    let two = R::from_f64(2.0);
    let modulus = (z.re * z.re + z.im * z.im).sqrt();
    let t = ((modulus + z.re.abs()) * half).sqrt();
    if z.re >= zero {
        Complex::new(t, z.im / (two * t))
    } else {
        let im = if z.im >= zero { t } else { -t };
        Complex::new(z.im.abs() / (two * t), im)
    }
}

/// `|v|_* = √⟨v,v⟩` on the principal branch.
pub fn pseudo_norm<R: Real>(v: &[Complex<R>]) -> Complex<R> {
    principal_sqrt(dot_unchecked(v, v))
}

/// Generalized Householder reflection `H = 𝟙 − 2 v vᵀ / ⟨v,v⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reflector<R: Real = f64> {
    v: Vec<Complex<R>>,
    vv: Complex<R>,
}

impl<R: Real> Reflector<R> {
    /// Builds the reflection that maps `y` onto `−|y|_* ê_k`, with
    /// `v = y + |y|_* ê_k` (`ê_k` the last axis).
    ///
    /// The last component `|y|_* + y_k` is evaluated as
    /// `Σ_{i<k} yᵢ² / (|y|_* − y_k)` whenever the direct sum would cancel.
    /// On breakdown the error carries the reflector order as its step index.
    pub fn new(y: &[Complex<R>]) -> Result<Self> {
        let k = y.len();
        if k == 0 {
            return Err(Error::LengthMismatch { expected: 1, actual: 0 });
        }
        if y.iter().any(|&z| !is_finite(z)) {
            return Err(Error::NonFinite("reflector input"));
        }
        let rho = pseudo_norm(y);
        let last = y[k - 1];
        let direct = rho + last;
        let tail = if norm_f64(direct) < norm_f64(rho - last) {
            let head = dot_unchecked(&y[..k - 1], &y[..k - 1]);
            head / (rho - last)
        } else {
            direct
        };
        let mut v = y.to_vec();
        v[k - 1] = tail;
        let vv = dot_unchecked(&v, &v);
        let scale = euclidean_norm_sqr(&v);
        if !is_finite(vv) || norm_f64(vv) <= ISOTROPY_TOLERANCE * scale || scale == 0.0 {
            return Err(Error::IsotropicBreakdown { step: k });
        }
        Ok(Self { v, vv })
    }

    pub fn order(&self) -> usize {
        self.v.len()
    }

    pub fn vector(&self) -> &[Complex<R>] {
        &self.v
    }

    /// Cached `⟨v,v⟩`.
    pub fn self_product(&self) -> Complex<R> {
        self.vv
    }

    /// `x − (2⟨v,x⟩/⟨v,v⟩) v`.
    pub fn apply(&self, x: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        let vx = indefinite_dot(&self.v, x)?;
        let factor = vx * R::from_f64(2.0) / self.vv;
        Ok(x.iter().zip(&self.v).map(|(xi, vi)| xi - factor * vi).collect())
    }

    /// Dense `k×k` form, rounded to `f64`. Only meant for tests and diagnostics.
    pub fn to_matrix(&self) -> CSMatrix {
        let scale = Complex::new(R::from_f64(2.0), R::zero()) / self.vv;
        CSMatrix::from_upper(self.order(), |i, j| {
            let delta = if i == j { R::one() } else { R::zero() };
            lower(Complex::new(delta, R::zero()) - scale * self.v[i] * self.v[j])
        })
    }
}

/// Free-function spelling of [`Reflector::new`].
pub fn make_reflector(y: &[Complex64]) -> Result<Reflector> {
    Reflector::new(y)
}

pub fn apply_reflector(h: &Reflector, x: &[Complex64]) -> Result<Vec<Complex64>> {
    h.apply(x)
}

pub fn reflector_matrix(h: &Reflector) -> CSMatrix {
    h.to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(re: f64) -> Complex64 {
        c(re, 0.0)
    }

    #[test]
    fn dot_examples() {
        assert_eq!(indefinite_dot(&[r(1.0), r(0.0)], &[r(0.0), r(1.0)]).unwrap(), r(0.0));
        assert_eq!(indefinite_dot(&[r(1.0), c(0.0, 1.0)], &[r(1.0), c(0.0, 1.0)]).unwrap(), r(0.0));
        assert_eq!(indefinite_dot(&[r(3.0), r(4.0)], &[r(3.0), r(4.0)]).unwrap(), r(25.0));
    }

    #[test]
    fn dot_length_mismatch() {
        assert_eq!(indefinite_dot(&[r(1.0)], &[r(1.0), r(2.0)]), Err(Error::LengthMismatch { expected: 1, actual: 2 }));
    }

    #[test]
    fn pseudo_norm_examples() {
        assert_eq!(pseudo_norm(&[r(3.0), r(4.0)]), r(5.0));
        assert_eq!(pseudo_norm(&[r(1.0), c(0.0, 1.0)]), r(0.0));
        let z = pseudo_norm(&[r(0.0), c(0.0, 2.0)]);
        assert_eq!(z, c(0.0, 2.0));
        assert_eq!(z * z, r(-4.0));
    }

    #[test]
    fn sqrt_branch_on_negative_axis() {
        assert_eq!(principal_sqrt(c(-9.0, 0.0)), c(0.0, 3.0));
        assert_eq!(principal_sqrt(c(-9.0, -0.0)), c(0.0, 3.0));
        let below = principal_sqrt(c(-9.0, -1e-300));
        assert!(below.im < 0.0);
        assert!(principal_sqrt(c(-1.0, 2.0)).re >= 0.0);
    }

    #[test]
    fn reflector_from_pythagorean_pair() {
        let h = Reflector::new(&[r(3.0), r(4.0)]).unwrap();
        assert_eq!(h.vector(), &[r(3.0), r(9.0)]);
        assert_eq!(h.self_product(), r(90.0));
        let out = h.apply(&[r(3.0), r(4.0)]).unwrap();
        assert_abs_diff_eq!(out[0].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((out[1] - r(-5.0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn reflector_matrix_pythagorean() {
        let m = Reflector::new(&[r(3.0), r(4.0)]).unwrap().to_matrix();
        let expected = [[0.8, -0.6], [-0.6, -0.8]];
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!((m[(i, j)] - r(expected[i][j])).norm(), 0.0, epsilon = 1e-15);
            }
        }
        assert_eq!(m[(0, 1)], m[(1, 0)]);
    }

    #[test]
    fn axis_aligned_input() {
        let cval = c(0.5, -2.0);
        let h = Reflector::new(&[r(0.0), r(0.0), cval]).unwrap();
        assert_eq!(h.vector()[..2], [r(0.0), r(0.0)]);
        assert_abs_diff_eq!((h.vector()[2] - 2.0 * cval).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((h.self_product() - 4.0 * cval * cval).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn order_one_reflector_is_minus_one() {
        let m = Reflector::new(&[c(1.5, 0.7)]).unwrap().to_matrix();
        assert_abs_diff_eq!((m[(0, 0)] - r(-1.0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn isotropic_input_breaks_down() {
        assert_eq!(Reflector::new(&[r(1.0), c(0.0, 1.0)]), Err(Error::IsotropicBreakdown { step: 2 }));
    }

    #[test]
    fn cancellation_branch_matches_projection() {
        // y_k ≈ −|y|_*: the direct sum |y|_* + y_k cancels.
        let y = [r(1e-9), r(-1.0)];
        let h = Reflector::new(&y).unwrap();
        let out = h.apply(&y).unwrap();
        let rho = pseudo_norm(&y);
        assert_abs_diff_eq!(out[0].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((out[1] + rho).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn fixes_orthogonal_complement_and_is_involution() {
        let h = Reflector::new(&[r(3.0), r(4.0)]).unwrap();
        // ⟨v, x⟩ = 0 for v = (3, 9), x = (3, −1)
        let x = [r(3.0), r(-1.0)];
        assert_eq!(h.apply(&x).unwrap(), x.to_vec());
        let twice = h.apply(&h.apply(&[r(1.0), r(0.0)]).unwrap()).unwrap();
        assert_abs_diff_eq!((twice[0] - r(1.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(twice[1].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn apply_length_mismatch() {
        let h = Reflector::new(&[r(3.0), r(4.0)]).unwrap();
        assert!(matches!(h.apply(&[r(1.0)]), Err(Error::LengthMismatch { .. })));
    }
}
