//! Plain bisection on a bracketed sign change.

use crate::real::Real;

/// Refines a bracket [lo, hi] with f(lo) = f_lo of known sign and
/// sign(f(hi)) != sign(f_lo). Stops once the interval is narrower than `tol`
/// or cannot be split further in the working precision (pass tol = 0 to run
/// to splitting exhaustion). Returns the midpoint and the last f value seen
/// there.
pub(crate) fn bisect<R: Real, E, F>(
    mut lo: R,
    mut hi: R,
    mut f_lo: R,
    tol: R,
    mut f: F,
) -> Result<(R, R), E>
where
    F: FnMut(R) -> Result<R, E>,
{
    let mut mid = R::half() * (lo + hi);
    let mut f_mid = f_lo;
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        mid = R::half() * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        f_mid = f(mid)?;
        if f_mid == R::zero() {
            return Ok((mid, f_mid));
        }
        if (f_mid > R::zero()) == (f_lo > R::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((mid, f_mid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn finds_sqrt_two() {
        let f = |x: f64| Ok::<f64, Infallible>(x * x - 2.0);
        let (root, _) = bisect(1.0, 2.0, -1.0, 0.0, f).unwrap();
        assert!((root - 2f64.sqrt()).abs() < 1e-15);
    }
}
