//! Eigensolver for complex symmetric (non-Hermitian) matrices.
//!
//! A dense `A = Aᵀ` is reduced to tridiagonal form with generalized
//! Householder reflections built on the bilinear product `Σ xᵢ yᵢ`, then
//! diagonalized by implicitly shifted QL sweeps with complex orthogonal
//! rotations. All transforms satisfy `Qᵀ Q = 𝟙`; none are unitary.
//!
//! ```
//! use cseig::{eigen, CSMatrix, SolverOptions};
//! use num_complex::Complex64;
//!
//! let a = CSMatrix::from_upper(2, |i, j| {
//!     if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) }
//! });
//! let spectrum = eigen(&a, &SolverOptions::default()).unwrap();
//! assert!((spectrum.eigenvalues[0] - Complex64::new(1.0, -1.0)).norm() < 1e-14);
//! ```

pub mod error;
pub mod indefinite;
pub mod matrix;
pub mod oracle;
pub mod oscillator;
pub mod scalar;
pub mod spectrum;
pub mod tql;
pub mod tridiag;

pub use error::{Error, Result};
pub use indefinite::{indefinite_dot, make_reflector, pseudo_norm, Reflector};
pub use matrix::{multiset_distance, CMatrix, CSMatrix};
pub use scalar::WorkPrecision;
pub use spectrum::{eigen, eigen_tridiagonal, Diagnostics, Spectrum};
pub use tql::{Direction, Rotation, SolverOptions};
pub use tridiag::{similarity_residual, tridiagonalize, tridiagonalize_with, Transform, TridiagonalMatrix};
