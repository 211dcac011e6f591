//! Spectral theory of the nonlinear Rabi models through their shared
//! su(1,1) structure.
//!
//! The two-photon, two-mode and intensity-dependent Rabi models all reduce,
//! up to a constant energy shift, to
//!
//! ```text
//! H = (eps/2) sigma_z + omega K0 + g sigma_x (K+ + K-)
//! ```
//!
//! acting on one su(1,1) irrep selected by the Bargmann index k. This crate
//! solves that unified Hamiltonian in the regime 0 < g < omega/2:
//!
//! * [`params`]: parameter sets, the realization catalog with its parameter
//!   and energy-shift maps, parity.
//! * [`derived`]: squeeze-frame constants (beta, r, xi, the coefficient
//!   decay rate).
//! * [`su11`]: generator matrix elements on the |k, m> ladder.
//! * [`recurrence`]: the three-term recurrence for the ansatz coefficients,
//!   forward and minimal-branch runs, decay-rate fits.
//! * [`isolated`]: exact isolated (Juddian) solutions on the baselines
//!   E = beta (k + M) and their finite closed-form eigenstates.
//! * [`gfunction`]: the parity-resolved G-function, root scans and the
//!   regular spectrum.
//!
//! All numerics are generic over the scalar type through [`real::Real`];
//! the `*64` aliases below pin the production f64 instantiation.

pub mod bisect;
pub mod derived;
pub mod error;
pub mod gfunction;
pub mod isolated;
pub mod params;
pub mod real;
pub mod recurrence;
pub mod special;
pub mod su11;

pub use derived::DerivedQuantities;
pub use error::{CoreError, Result};
pub use gfunction::{GEvaluation, GfunSettings, GRoot, Level, LevelSource, SpectrumResult};
pub use isolated::{IsolatedOptions, IsolatedSolution};
pub use params::{BargmannIndex, ModelParams, Parity, Realization};
pub use real::Real;
pub use recurrence::{CoefficientSequence, RecurrenceSettings};

pub type ModelParams64 = ModelParams<f64>;
pub type DerivedQuantities64 = DerivedQuantities<f64>;
pub type CoefficientSequence64 = CoefficientSequence<f64>;
pub type IsolatedSolution64 = IsolatedSolution<f64>;
pub type SpectrumResult64 = SpectrumResult<f64>;
