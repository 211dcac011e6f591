//! Model parameters, the realization catalog and the parity label.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{CoreError, Result};
use crate::real::Real;

/// Z2 parity quantum number, eigenvalue of -sigma_z (x) exp[i pi (K0 - k)].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    /// +1 for even, -1 for odd.
    pub fn sign<R: Real>(self) -> R {
        match self {
            Parity::Even => R::one(),
            Parity::Odd => -R::one(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    /// Parity of the product state |spin> (x) |k,m> in the sigma_z basis.
    /// `spin_up` refers to the sigma_z = +1 branch.
    pub fn of_basis_state(spin_up: bool, m: usize) -> Parity {
        let t = m % 2 == 0; // exp[i pi (K0 - k)] eigenvalue +1
        match (spin_up, t) {
            (true, true) | (false, false) => Parity::Odd,
            (true, false) | (false, true) => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Bargmann index of the su(1,1) irrep, kept as an exact rational so that
/// sector constraints like k = 1/4 are checked without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BargmannIndex(Ratio<i64>);

impl BargmannIndex {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(CoreError::InvalidParams("Bargmann index with zero denominator".into()));
        }
        let r = Ratio::new(numer, denom);
        if r <= Ratio::new(0, 1) {
            return Err(CoreError::InvalidParams(format!(
                "Bargmann index must be positive, got {r}"
            )));
        }
        Ok(BargmannIndex(r))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn value<R: Real>(&self) -> R {
        R::of_usize(self.numer() as usize) / R::of_usize(self.denom() as usize)
    }

    /// k in {1/2, 1, 3/2, ...}
    pub fn is_positive_half_integer(&self) -> bool {
        self.denom() == 1 || self.denom() == 2
    }

    /// 2k - 1 >= 0
    pub fn at_least_half(&self) -> bool {
        self.0 * 2 >= Ratio::new(1, 1)
    }

    pub fn is(&self, numer: i64, denom: i64) -> bool {
        self.0 == Ratio::new(numer, denom)
    }
}

impl fmt::Display for BargmannIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for BargmannIndex {
    type Err = CoreError;

    /// Accepts "p/q", an integer, or a decimal such as "0.25" (kept exact).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |_| CoreError::InvalidParams(format!("cannot parse Bargmann index from {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(bad)?;
            let q: i64 = q.trim().parse().map_err(bad)?;
            return BargmannIndex::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 12 || frac.chars().any(|c| !c.is_ascii_digit()) {
                return Err(CoreError::InvalidParams(format!(
                    "decimal Bargmann index {s:?} not representable exactly"
                )));
            }
            let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(bad)? };
            let scale = 10_i64.pow(frac.len() as u32);
            let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(bad)? };
            return BargmannIndex::new(int * scale + frac, scale);
        }
        let n: i64 = s.trim().parse().map_err(bad)?;
        BargmannIndex::new(n, 1)
    }
}

/// Which physical model the (epsilon, omega, g) fields describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    /// The su(1,1) form itself; no energy shift.
    Unified,
    /// One-mode realization, k in {1/4, 3/4} (even / odd photon sector).
    TwoPhoton,
    /// Two-mode realization on the fixed number-difference ladder, 2k integer.
    TwoMode,
    /// Holstein-Primakoff realization, needs 2k - 1 >= 0.
    IntensityDependent,
}

impl Realization {
    pub fn label(self) -> &'static str {
        match self {
            Realization::Unified => "unified",
            Realization::TwoPhoton => "two-photon",
            Realization::TwoMode => "two-mode",
            Realization::IntensityDependent => "intensity",
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Realization {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unified" => Ok(Realization::Unified),
            "two-photon" | "twophoton" | "2p" => Ok(Realization::TwoPhoton),
            "two-mode" | "twomode" | "2m" => Ok(Realization::TwoMode),
            "intensity" | "intensity-dependent" | "id" => Ok(Realization::IntensityDependent),
            other => Err(CoreError::InvalidParams(format!("unknown realization {other:?}"))),
        }
    }
}

/// Physical inputs of one model instance. For a non-unified realization the
/// epsilon / omega / g fields are the model's native parameters (for example
/// omega is the two-photon mode frequency, not the unified frequency).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<R: Real> {
    pub epsilon: R,
    pub omega: R,
    pub g: R,
    pub k: BargmannIndex,
    pub realization: Realization,
}

impl<R: Real> ModelParams<R> {
    pub fn new(
        epsilon: R,
        omega: R,
        g: R,
        k: BargmannIndex,
        realization: Realization,
    ) -> Result<Self> {
        if !(epsilon.is_finite() && omega.is_finite() && g.is_finite()) {
            return Err(CoreError::InvalidParams("non-finite parameter".into()));
        }
        if epsilon < R::zero() {
            return Err(CoreError::InvalidParams("epsilon must be >= 0".into()));
        }
        if omega <= R::zero() {
            return Err(CoreError::InvalidParams("omega must be > 0".into()));
        }
        // The collapse bound lives in the unified frame: g_u < omega_u / 2.
        // In native two-mode parameters that reads g < omega; for the other
        // realizations it coincides with g < omega/2. g = 0 itself is
        // allowed (decoupled limit, diagonalization only); the recurrence
        // paths reject it separately.
        let collapse_bound = match realization {
            Realization::TwoMode => omega,
            _ => omega / R::two(),
        };
        if g < R::zero() || g >= collapse_bound {
            return Err(CoreError::InvalidParams(format!(
                "coupling must satisfy 0 <= g < {collapse_bound} for this realization, got g = {g}"
            )));
        }
        match realization {
            Realization::Unified => {}
            Realization::TwoPhoton => {
                if !(k.is(1, 4) || k.is(3, 4)) {
                    return Err(CoreError::InvalidParams(format!(
                        "two-photon realization needs k = 1/4 or 3/4, got {k}"
                    )));
                }
            }
            Realization::TwoMode => {
                if !k.is_positive_half_integer() {
                    return Err(CoreError::InvalidParams(format!(
                        "two-mode realization needs k in {{1/2, 1, 3/2, ...}}, got {k}"
                    )));
                }
            }
            Realization::IntensityDependent => {
                if !k.at_least_half() {
                    return Err(CoreError::InvalidParams(format!(
                        "intensity-dependent realization needs 2k - 1 >= 0, got k = {k}"
                    )));
                }
            }
        }
        Ok(ModelParams { epsilon, omega, g, k, realization })
    }

    /// Unified-form parameters.
    pub fn unified(epsilon: R, omega: R, g: R, k: BargmannIndex) -> Result<Self> {
        Self::new(epsilon, omega, g, k, Realization::Unified)
    }

    pub fn k_value(&self) -> R {
        self.k.value()
    }

    /// Maps this model onto the unified Hamiltonian. Returns the unified
    /// parameter set and the constant shift such that
    /// `E_model = E_unified - shift`.
    pub fn to_unified(&self) -> (ModelParams<R>, R) {
        let (omega_u, g_u, shift) = match self.realization {
            Realization::Unified => (self.omega, self.g, R::zero()),
            Realization::TwoPhoton => (self.omega * R::two(), self.g * R::two(), self.omega / R::two()),
            Realization::TwoMode => (self.omega * R::two(), self.g, self.omega),
            Realization::IntensityDependent => (self.omega, self.g, self.k_value() * self.omega),
        };
        let unified = ModelParams {
            epsilon: self.epsilon,
            omega: omega_u,
            g: g_u,
            k: self.k,
            realization: Realization::Unified,
        };
        (unified, shift)
    }
}
