//! Working precision of the solver kernels.

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::Float;
pub use twofloat::TwoFloat;

/// Real type the solver kernels compute in.
pub trait Real: Float + Debug + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Real for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for TwoFloat {
    #[inline]
    fn from_f64(x: f64) -> Self {
        TwoFloat::from(x)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }
}

/// Arithmetic used inside the reduction and the QL iteration. Inputs and
/// outputs are always `f64`; only intermediate values change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WorkPrecision {
    /// Plain `f64` throughout.
    Double,
    /// Double-double (about 32 significant digits) for the work matrix, the
    /// tridiagonal form, the sweeps and the accumulated transform, rounded to
    /// `f64` on output.
    #[default]
    DoubleDouble,
}

#[inline]
pub(crate) fn lift<R: Real>(z: Complex<f64>) -> Complex<R> {
    Complex::new(R::from_f64(z.re), R::from_f64(z.im))
}

#[inline]
pub(crate) fn lower<R: Real>(z: Complex<R>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

#[inline]
pub(crate) fn norm_f64<R: Real>(z: Complex<R>) -> f64 {
    lower(z).norm()
}

#[inline]
pub(crate) fn is_finite<R: Real>(z: Complex<R>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
