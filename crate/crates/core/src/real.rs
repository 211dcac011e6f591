//! Scalar abstraction: the solver is generic over the floating-point type.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar (f32 or f64) the core math runs on.
///
/// Production use is f64 throughout; f32 instantiations exist mainly to keep
/// the kernels honest about precision assumptions.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from an f64 constant.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant not representable")
    }

    /// Conversion from a small index.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize not representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half() -> Self {
        Self::of(0.5)
    }

    fn two() -> Self {
        Self::of(2.0)
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}
