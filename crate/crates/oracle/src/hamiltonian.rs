//! Dense truncated Hamiltonians.

use nalgebra::DMatrix;
use nlrabi_core::params::{BargmannIndex, ModelParams, Realization};
use nlrabi_core::su11::raising_coeff;

use crate::{OracleError, Result};

/// Spin basis the 2N x 2N matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinBasis {
    /// Spin-major sigma_z basis: rows 0..N are |up> (x) |k,m>, rows N..2N
    /// are |down> (x) |k,m>. Parity is diagonal here.
    SigmaZ,
    /// sigma_x eigenbasis: rows 0..N are the |+> branch, rows N..2N the
    /// |-> branch; the bosonic blocks are tridiagonal and the spin coupling
    /// is -eps/2 across the branches.
    SigmaX,
}

impl SpinBasis {
    pub fn label(self) -> &'static str {
        match self {
            SpinBasis::SigmaZ => "sigma-z",
            SpinBasis::SigmaX => "sigma-x",
        }
    }
}

/// A truncated 2N x 2N matrix representation. The matrix is built entry-pair
/// by entry-pair from the same arithmetic, so it is symmetric to the bit.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedHamiltonian {
    /// Bosonic levels kept per spin branch.
    pub n: usize,
    pub basis: SpinBasis,
    pub realization: Realization,
    pub k: BargmannIndex,
    pub matrix: DMatrix<f64>,
}

impl TruncatedHamiltonian {
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Unified Hamiltonian (eps/2) sigma_z + omega K0 + g sigma_x (K+ + K-).
    /// The epsilon/omega/g fields of `params` are read as unified quantities
    /// regardless of the realization tag.
    pub fn unified(params: &ModelParams<f64>, n: usize, basis: SpinBasis) -> Self {
        assert!(n >= 2, "need at least two ladder states");
        let k = params.k.value::<f64>();
        let (eps, omega, g) = (params.epsilon, params.omega, params.g);
        let mut h = DMatrix::<f64>::zeros(2 * n, 2 * n);
        match basis {
            SpinBasis::SigmaZ => {
                for m in 0..n {
                    let diag = omega * (k + m as f64);
                    h[(m, m)] = diag + eps / 2.0;
                    h[(n + m, n + m)] = diag - eps / 2.0;
                }
                for m in 0..n - 1 {
                    let v = g * raising_coeff(k, m);
                    // sigma_x flips the spin; K+ + K- moves m by one
                    h[(m + 1, n + m)] = v;
                    h[(n + m, m + 1)] = v;
                    h[(n + m + 1, m)] = v;
                    h[(m, n + m + 1)] = v;
                }
            }
            SpinBasis::SigmaX => {
                for m in 0..n {
                    let diag = omega * (k + m as f64);
                    h[(m, m)] = diag;
                    h[(n + m, n + m)] = diag;
                    h[(m, n + m)] = -eps / 2.0;
                    h[(n + m, m)] = -eps / 2.0;
                }
                for m in 0..n - 1 {
                    let v = g * raising_coeff(k, m);
                    h[(m + 1, m)] = v;
                    h[(m, m + 1)] = v;
                    h[(n + m + 1, n + m)] = -v;
                    h[(n + m, n + m + 1)] = -v;
                }
            }
        }
        TruncatedHamiltonian { n, basis, realization: Realization::Unified, k: params.k, matrix: h }
    }

    /// A physical model in its native Fock basis (sigma-z spin layout):
    /// two-photon on the even/odd photon sector, two-mode on the fixed
    /// number-difference ladder, intensity-dependent on plain Fock states.
    pub fn realization(params: &ModelParams<f64>, n: usize) -> Result<Self> {
        assert!(n >= 2, "need at least two ladder states");
        let k = params.k.value::<f64>();
        let (eps, omega, g) = (params.epsilon, params.omega, params.g);

        // bosonic diagonal and hopping for ladder index m
        let (diag, hop): (Box<dyn Fn(usize) -> f64>, Box<dyn Fn(usize) -> f64>) =
            match params.realization {
                Realization::Unified => {
                    return Err(OracleError::Invalid(
                        "realization builder expects a physical model; use `unified`".into(),
                    ))
                }
                Realization::TwoPhoton => {
                    // photon number 2m (k = 1/4) or 2m + 1 (k = 3/4)
                    let offset = if params.k.is(1, 4) { 0usize } else { 1 };
                    (
                        Box::new(move |m| omega * (2 * m + offset) as f64),
                        Box::new(move |m| {
                            let nf = (2 * m + offset) as f64;
                            g * ((nf + 1.0) * (nf + 2.0)).sqrt()
                        }),
                    )
                }
                Realization::TwoMode => (
                    // |m + 2k - 1>_a (x) |m>_b
                    Box::new(move |m| omega * (2.0 * m as f64 + 2.0 * k - 1.0)),
                    Box::new(move |m| g * raising_coeff(k, m)),
                ),
                Realization::IntensityDependent => (
                    Box::new(move |m| omega * m as f64),
                    Box::new(move |m| g * raising_coeff(k, m)),
                ),
            };

        let mut h = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for m in 0..n {
            h[(m, m)] = diag(m) + eps / 2.0;
            h[(n + m, n + m)] = diag(m) - eps / 2.0;
        }
        for m in 0..n - 1 {
            let v = hop(m);
            h[(m + 1, n + m)] = v;
            h[(n + m, m + 1)] = v;
            h[(n + m + 1, m)] = v;
            h[(m, n + m + 1)] = v;
        }
        Ok(TruncatedHamiltonian {
            n,
            basis: SpinBasis::SigmaZ,
            realization: params.realization,
            k: params.k,
            matrix: h,
        })
    }
}
