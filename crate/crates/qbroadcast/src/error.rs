//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix or subsystem specification does not have the size an
    /// operation requires.
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    /// Subsystem indices passed to a partial trace are empty, repeated or
    /// out of range.
    #[error("invalid subsystem selection in {context}: {reason}")]
    InvalidSubsystems {
        context: &'static str,
        reason: String,
    },

    /// A matrix that must be Hermitian is not, beyond the stated tolerance.
    #[error("matrix is not Hermitian: max |a(i,j) - conj(a(j,i))| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// Machine parameter outside the admissible open interval (0, 1/2).
    #[error("machine parameter lambda = {lambda} lies outside the open interval (0, 0.5)")]
    LambdaOutOfRange { lambda: f64 },

    /// The machine-state Gram matrix is indefinite: no set of vectors with
    /// the required inner products exists, so the cloner has no unitary
    /// realization.
    #[error("no unitary realization: machine-state Gram matrix has minimum eigenvalue {min_eigenvalue:.6e}")]
    InfeasibleMachine { min_eigenvalue: f64 },

    /// An amplitude vector whose squared norm deviates from 1.
    #[error("state is not normalized: squared norm deviates from 1 by {deviation:.3e}")]
    NotNormalized { deviation: f64 },
}
