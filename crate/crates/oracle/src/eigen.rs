//! Dense symmetric eigensolver front end.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::{OracleError, Result, TruncatedHamiltonian};

const MAX_ITER: usize = 10_000;

/// Sorted eigenvalues of a symmetric matrix, lowest `n_lowest` of them.
/// Deterministic for identical input; ties keep ascending order.
pub fn symmetric_eigenvalues(matrix: &DMatrix<f64>, n_lowest: usize) -> Result<Vec<f64>> {
    let dim = matrix.nrows();
    let eig = SymmetricEigen::try_new(matrix.clone(), f64::EPSILON, MAX_ITER)
        .ok_or(OracleError::EigenConvergence { dim, max_iter: MAX_ITER })?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals.truncate(n_lowest.min(dim));
    Ok(vals)
}

/// Lowest eigenvalues of a truncated Hamiltonian.
pub fn eigen_sym(h: &TruncatedHamiltonian, n_lowest: usize) -> Result<Vec<f64>> {
    if n_lowest > h.dim() {
        return Err(OracleError::Invalid(format!(
            "asked for {n_lowest} eigenvalues of a {}x{} matrix",
            h.dim(),
            h.dim()
        )));
    }
    symmetric_eigenvalues(&h.matrix, n_lowest)
}
