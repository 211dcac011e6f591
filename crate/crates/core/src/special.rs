//! Log-gamma, used to evaluate factorial ratios without overflow.

use crate::real::Real;

// Lanczos approximation, g = 7, 9 coefficients. Relative accuracy is a few
// ulps over the range used here (argument >= 1/2).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for positive argument.
pub fn ln_gamma<R: Real>(x: R) -> R {
    debug_assert!(x > R::zero(), "ln_gamma needs a positive argument");
    if x < R::half() {
        // reflection: ln G(x) = ln(pi / sin(pi x)) - ln G(1 - x)
        let pi = R::of(std::f64::consts::PI);
        return (pi / (pi * x).sin()).ln() - ln_gamma(R::one() - x);
    }
    let z = x - R::one();
    let mut series = R::of(LANCZOS_COEFF[0]);
    for (i, &c) in LANCZOS_COEFF.iter().enumerate().skip(1) {
        series = series + R::of(c) / (z + R::of_usize(i));
    }
    let t = z + R::of(LANCZOS_G) + R::half();
    let half_ln_two_pi = R::of(0.918_938_533_204_672_7);
    half_ln_two_pi + (z + R::half()) * t.ln() - t + series.ln()
}

/// ln of Gamma(2k + m) / (m! Gamma(2k)), the factorial ratio behind the
/// su(1,1) overlap weights.
pub fn ln_weight_ratio<R: Real>(two_k: R, m: usize) -> R {
    ln_gamma(two_k + R::of_usize(m)) - ln_gamma(R::of_usize(m) + R::one()) - ln_gamma(two_k)
}
