//! Quantities derived once per parameter set by the Bogoliubov (squeeze)
//! transformation that diagonalizes the spin-projected bosonic part.

use crate::error::{CoreError, Result};
use crate::params::ModelParams;
use crate::real::Real;

/// Squeeze-frame constants for one unified parameter set.
///
/// `beta = sqrt(omega^2 - 4 g^2)` is the renormalized level spacing; it
/// vanishes at the spectral collapse point g = omega/2. The squeeze angle is
/// `r = arctanh(2g/omega)`, `xi = tanh(r/2)` weights the G-function series,
/// and `decay_rate = ln(omega/2g)` is the asymptotic decay rate of the
/// minimal recurrence solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities<R> {
    pub beta: R,
    pub r: R,
    pub cosh_2r: R,
    pub sinh_2r: R,
    pub xi: R,
    pub decay_rate: R,
}

impl<R: Real> DerivedQuantities<R> {
    /// Baseline energy beta (k + m).
    pub fn baseline(&self, k_value: R, m: usize) -> R {
        self.beta * (k_value + R::of_usize(m))
    }

    /// Index of the baseline nearest to `energy`, if any lies at m >= 0.
    pub fn nearest_baseline(&self, k_value: R, energy: R) -> Option<usize> {
        let m = (energy / self.beta - k_value).round();
        if m < R::zero() {
            None
        } else {
            m.to_usize()
        }
    }
}

impl<R: Real> ModelParams<R> {
    /// Computes the squeeze-frame quantities. Requires 0 < g < omega/2; the
    /// decoupled limit g = 0 is rejected here because sinh 2r vanishes and
    /// the recurrence coefficients lose meaning.
    pub fn derive(&self) -> Result<DerivedQuantities<R>> {
        let (omega, g) = (self.omega, self.g);
        if g <= R::zero() || g >= omega / R::two() {
            return Err(CoreError::CouplingOutOfRange { g: g.as_f64(), omega: omega.as_f64() });
        }
        let beta = (omega * omega - R::of(4.0) * g * g).sqrt();
        // arctanh(2g/omega) written out for accuracy near both ends
        let r = R::half() * ((omega + R::two() * g) / (omega - R::two() * g)).ln();
        let cosh_2r = (omega * omega + R::of(4.0) * g * g) / (beta * beta);
        let sinh_2r = R::of(4.0) * g * omega / (beta * beta);
        // tanh(r/2) = (omega - beta) / (2g) = 2g / (omega + beta); the second
        // form has no cancellation at small g
        let xi = R::two() * g / (omega + beta);
        let decay_rate = (omega / (R::two() * g)).ln();
        Ok(DerivedQuantities { beta, r, cosh_2r, sinh_2r, xi, decay_rate })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::BargmannIndex;

    fn params(epsilon: f64, omega: f64, g: f64) -> ModelParams<f64> {
        ModelParams::unified(epsilon, omega, g, BargmannIndex::new(1, 2).unwrap()).unwrap()
    }

    #[test]
    fn reference_point() {
        let dq = params(1.0, 1.0, 0.4).derive().unwrap();
        assert!((dq.beta - 0.6).abs() < 1e-15);
        assert!((dq.r - 3f64.ln()).abs() < 1e-15);
        assert!((dq.xi - 0.5).abs() < 1e-15);
        assert!((dq.decay_rate - 1.25f64.ln()).abs() < 1e-15);
        assert!((dq.cosh_2r - 1.64 / 0.36).abs() < 1e-13);
        assert!((dq.sinh_2r - 1.6 / 0.36).abs() < 1e-13);
    }

    #[test]
    fn rejects_decoupled_and_collapse() {
        assert!(matches!(
            params(1.0, 1.0, 0.0).derive(),
            Err(CoreError::CouplingOutOfRange { .. })
        ));
        // collapse point itself is unreachable through the constructor
        assert!(ModelParams::unified(1.0, 1.0, 0.5, BargmannIndex::new(1, 2).unwrap()).is_err());
    }

    #[test]
    fn beta_decreases_toward_collapse() {
        let mut last = f64::INFINITY;
        for i in 1..50 {
            let g = 0.01 * i as f64;
            let beta = params(1.0, 1.0, g).derive().unwrap().beta;
            assert!(beta < last);
            last = beta;
        }
        assert!(last < 0.2, "beta should approach 0 near g = omega/2");
    }

    #[test]
    fn baseline_lookup() {
        let dq = params(1.0, 1.0, 0.4).derive().unwrap();
        assert!((dq.baseline(0.5, 2) - 1.5).abs() < 1e-15);
        assert_eq!(dq.nearest_baseline(0.5, 1.52), Some(2));
        assert_eq!(dq.nearest_baseline(0.5, -0.8), None);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn squeeze_identities(omega in 0.2f64..5.0, frac in 0.01f64..0.49, eps in 0.0f64..3.0) {
                let g = frac * omega;
                let p = ModelParams::unified(eps, omega, g, BargmannIndex::new(1, 2).unwrap()).unwrap();
                let dq = p.derive().unwrap();
                // beta^2 + 4 g^2 = omega^2
                prop_assert!(((dq.beta.powi(2) + 4.0 * g * g) / (omega * omega) - 1.0).abs() < 1e-12);
                // cosh^2 2r - sinh^2 2r = 1
                prop_assert!(((dq.cosh_2r.powi(2) - dq.sinh_2r.powi(2)) - 1.0).abs() < 1e-9 * dq.cosh_2r.powi(2));
                // xi below the series convergence radius tanh r
                prop_assert!(dq.xi > 0.0 && dq.xi < dq.r.tanh());
                // xi matches tanh(r/2)
                prop_assert!((dq.xi - (0.5 * dq.r).tanh()).abs() < 1e-12);
            }
        }
    }
}
