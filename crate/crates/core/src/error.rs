use thiserror::Error;

/// Failure modes of the complex symmetric eigensolver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("matrix is not symmetric (max |A_ij - A_ji| = {0:e})")]
    NotSymmetric(f64),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    /// The reflector parameter vector is (numerically) isotropic, ⟨v,v⟩ ≈ 0.
    #[error("isotropic breakdown of the Householder reflection at step {step}")]
    IsotropicBreakdown { step: usize },

    /// The radicand c² + s² of a complex rotation vanished.
    #[error("rotation breakdown at position {position}")]
    RotationBreakdown { position: usize },

    #[error("no convergence for eigenvalue {index} after {sweeps} sweeps")]
    NoConvergence { index: usize, sweeps: usize },

    #[error("matrix order {order} exceeds the oracle limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("root finder did not converge after {0} iterations")]
    RootsNoConvergence(usize),

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
