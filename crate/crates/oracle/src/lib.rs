//! Truncated-basis diagonalization of the nonlinear Rabi models.
//!
//! This crate is the benchmark side of the solver: it builds dense
//! 2N x 2N matrix representations of the unified su(1,1) Hamiltonian and of
//! each physical realization in its native Fock basis, diagonalizes them,
//! and splits the unified matrix into parity blocks. Agreement between these
//! eigenvalues and the G-function roots from `nlrabi-core` is the
//! cross-method contract everything else is tested against.
//!
//! Truncation policy: states with m >= N are dropped, nothing is smoothed
//! at the boundary, and convergence is certified by comparing N against 2N
//! rather than assumed. Close to the collapse point (g > 0.45 omega) no N
//! is honest and callers are expected to report non-convergence instead of
//! growing the basis silently.

mod eigen;
mod hamiltonian;
mod parity;

pub use eigen::{eigen_sym, symmetric_eigenvalues};
pub use hamiltonian::{SpinBasis, TruncatedHamiltonian};
pub use parity::{parity_of_index, parity_project, parity_spectrum};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("eigensolver failed to converge for a {dim}x{dim} matrix within {max_iter} iterations")]
    EigenConvergence { dim: usize, max_iter: usize },

    #[error("operation needs a unified sigma-z Hamiltonian, got {got}")]
    WrongBasis { got: String },

    #[error("invalid request: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;
