//! Three-term recurrence for the ansatz coefficients (c_m, d_m).
//!
//! In the squeeze frame the lower-component coefficients obey
//!
//!   d_{m+1} = T_m d_m - R_{m-1} d_{m-1},      d_0 = 1,
//!
//! with
//!
//!   T_m = 2 (beta cosh2r (k+m) - (eps^2/4) / (beta (k+m) - E) - E)
//!         / (beta sinh2r sqrt((m+1)(m+2k))),
//!   R_m = sqrt((m+1)(m+2k) / ((m+2)(m+2k+1))),
//!
//! and the upper components follow from c_m = (eps/2) d_m / (beta (k+m) - E).
//!
//! The recurrence has a minimal solution decaying like (2g/omega)^m and a
//! dominant one growing like (omega/2g)^m. Run forward, generic E produces
//! the dominant one; that is harmless for G-function evaluation (the series
//! weights still force convergence) but useless for inspecting eigenstate
//! coefficients at an eigenvalue, where rounding reseeds the dominant branch.
//! [`minimal_sequence`] therefore isolates the decaying branch by running the
//! recurrence downward from a zero seed, which is stable in that direction.

use crate::derived::DerivedQuantities;
use crate::error::{CoreError, Result};
use crate::params::ModelParams;
use crate::real::Real;

/// |d| threshold that triggers a rescale of the running pair.
const RESCALE_LIMIT: f64 = 1e250;
/// Factor applied when the limit trips; its log is tracked per entry.
const RESCALE_FACTOR: f64 = 1e-200;
const RESCALE_LOG: f64 = 460.51701859880916; // -ln(RESCALE_FACTOR)

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceSettings<R> {
    /// Pole guard relative to omega; trial energies closer than this to a
    /// baseline are rejected rather than evaluated.
    pub pole_guard_rel: R,
}

impl<R: Real> Default for RecurrenceSettings<R> {
    fn default() -> Self {
        RecurrenceSettings { pole_guard_rel: R::of(1e-12) }
    }
}

/// Ratio coefficient R_m, always in (0, 1) and increasing toward 1.
pub fn r_coeff<R: Real>(m: usize, k_value: R) -> R {
    let m = R::of_usize(m);
    let two_k = R::two() * k_value;
    (((m + R::one()) * (m + two_k)) / ((m + R::two()) * (m + two_k + R::one()))).sqrt()
}

/// Recurrence coefficient T_m at trial energy `energy`.
///
/// Fails with [`CoreError::BaselineCollision`] when the energy sits within
/// `pole_guard` of the baseline beta (k + m). With epsilon = 0 the pole term
/// vanishes identically and no energy is rejected.
pub fn t_coeff<R: Real>(
    m: usize,
    energy: R,
    params: &ModelParams<R>,
    dq: &DerivedQuantities<R>,
    pole_guard: R,
) -> Result<R> {
    let k = params.k_value();
    let km = k + R::of_usize(m);
    let base = dq.beta * km;
    let pole_term = if params.epsilon.is_zero() {
        R::zero()
    } else {
        let den = base - energy;
        if den.abs() < pole_guard {
            return Err(CoreError::BaselineCollision {
                index: m,
                baseline: base.as_f64(),
                energy: energy.as_f64(),
            });
        }
        params.epsilon * params.epsilon / (R::of(4.0) * den)
    };
    let numer = R::two() * (dq.beta * dq.cosh_2r * km - pole_term - energy);
    let m_r = R::of_usize(m);
    let denom = dq.beta * dq.sinh_2r * ((m_r + R::one()) * (m_r + R::two() * k)).sqrt();
    Ok(numer / denom)
}

/// Paired expansion coefficients of the ansatz up to a truncation index.
///
/// Entries are stored in a scaled form: the true values are
/// `d[m] * exp(log_scale[m])` and `c[m] * exp(log_scale[m])`. The scale is
/// nonzero only after an overflow rescale, so plain reads of `d`/`c` are fine
/// for moderate sequences. Ratios and the c-d relation hold at any fixed
/// index regardless of scale.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence<R> {
    pub energy: R,
    pub d: Vec<R>,
    pub c: Vec<R>,
    pub log_scale: Vec<R>,
    /// Number of overflow rescales applied while running.
    pub rescales: usize,
    /// True when a non-finite value cut the run short of the requested index.
    pub truncated: bool,
}

impl<R: Real> CoefficientSequence<R> {
    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// ln |d_m| including the scale, -inf for an exact zero.
    pub fn ln_abs_d(&self, m: usize) -> R {
        self.d[m].abs().ln() + self.log_scale[m]
    }

    pub fn ln_abs_c(&self, m: usize) -> R {
        self.c[m].abs().ln() + self.log_scale[m]
    }
}

fn upper_coeff<R: Real>(d: R, baseline: R, energy: R, epsilon: R) -> R {
    if epsilon.is_zero() {
        R::zero()
    } else {
        epsilon * d / (R::two() * (baseline - energy))
    }
}

fn guard_pole<R: Real>(
    energy: R,
    params: &ModelParams<R>,
    dq: &DerivedQuantities<R>,
    m_max: usize,
    pole_guard: R,
) -> Result<()> {
    if params.epsilon.is_zero() {
        return Ok(());
    }
    if let Some(m) = dq.nearest_baseline(params.k_value(), energy) {
        if m <= m_max {
            let base = dq.baseline(params.k_value(), m);
            if (base - energy).abs() < pole_guard {
                return Err(CoreError::BaselineCollision {
                    index: m,
                    baseline: base.as_f64(),
                    energy: energy.as_f64(),
                });
            }
        }
    }
    Ok(())
}

/// Runs the recurrence forward from d_0 = 1 up to index `m_max`.
///
/// Off an eigenvalue the result is dominated by the growing branch; that is
/// the expected behavior and what the displaced-energy diagnostics rely on.
pub fn forward_sequence<R: Real>(
    energy: R,
    params: &ModelParams<R>,
    m_max: usize,
    settings: &RecurrenceSettings<R>,
) -> Result<CoefficientSequence<R>> {
    if m_max < 1 {
        return Err(CoreError::InvalidParams("m_max must be >= 1".into()));
    }
    let dq = params.derive()?;
    let guard = settings.pole_guard_rel * params.omega;
    guard_pole(energy, params, &dq, m_max, guard)?;

    let k = params.k_value();
    let mut d = Vec::with_capacity(m_max + 1);
    let mut c = Vec::with_capacity(m_max + 1);
    let mut log_scale = Vec::with_capacity(m_max + 1);
    let mut rescales = 0usize;
    let mut truncated = false;

    let mut prev = R::zero();
    let mut cur = R::one();
    let mut ls = R::zero();
    let limit = R::of(RESCALE_LIMIT);
    let factor = R::of(RESCALE_FACTOR);

    for m in 0..=m_max {
        d.push(cur);
        c.push(upper_coeff(cur, dq.baseline(k, m), energy, params.epsilon));
        log_scale.push(ls);
        if m == m_max {
            break;
        }
        let t = t_coeff(m, energy, params, &dq, guard)?;
        let mut next = if m == 0 { t * cur } else { t * cur - r_coeff(m - 1, k) * prev };
        if !next.is_finite() {
            truncated = true;
            break;
        }
        if next.abs() > limit {
            next = next * factor;
            cur = cur * factor;
            ls = ls + R::of(RESCALE_LOG);
            rescales += 1;
        }
        prev = cur;
        cur = next;
    }

    Ok(CoefficientSequence { energy, d, c, log_scale, rescales, truncated })
}

/// Isolates the minimal (decaying) solution at the given energy by running
/// the recurrence downward from a zero seed well above `m_max`, then
/// normalizing to d_0 = 1.
///
/// Meaningful when `energy` is an eigenvalue; elsewhere it still returns the
/// minimal solution of the recurrence, which then has no physical role.
pub fn minimal_sequence<R: Real>(
    energy: R,
    params: &ModelParams<R>,
    m_max: usize,
    settings: &RecurrenceSettings<R>,
) -> Result<CoefficientSequence<R>> {
    if m_max < 1 {
        return Err(CoreError::InvalidParams("m_max must be >= 1".into()));
    }
    let dq = params.derive()?;
    let guard = settings.pole_guard_rel * params.omega;

    // Start high enough that the admixture of the unwanted branch, which
    // shrinks by (2g/omega)^2 per downward step, is below double precision
    // at m_max.
    let buffer = (R::of(10.0 * std::f64::consts::LN_10) / dq.decay_rate)
        .ceil()
        .to_usize()
        .unwrap_or(600)
        .clamp(30, 600);
    let top = m_max + buffer;
    guard_pole(energy, params, &dq, top, guard)?;

    let k = params.k_value();
    let limit = R::of(RESCALE_LIMIT);
    let factor = R::of(RESCALE_FACTOR);

    let mut val = vec![R::zero(); top + 2];
    let mut ls = vec![R::zero(); top + 2];
    val[top] = R::one();
    let mut rescales = 0usize;
    let mut scale = R::zero();
    for m in (1..=top).rev() {
        let t = t_coeff(m, energy, params, &dq, guard)?;
        let mut lower = (t * val[m] - val[m + 1]) / r_coeff(m - 1, k);
        if lower.abs() > limit {
            lower = lower * factor;
            val[m] = val[m] * factor;
            ls[m] = ls[m] + R::of(RESCALE_LOG);
            scale = scale + R::of(RESCALE_LOG);
            rescales += 1;
        }
        val[m - 1] = lower;
        ls[m - 1] = scale;
    }

    // normalize to d_0 = 1 in log space; the minimal branch only decays, so
    // the normalized entries stay at or below unity
    let ln0 = val[0].abs().ln() + ls[0];
    let sign0 = val[0].signum();
    let mut d = Vec::with_capacity(m_max + 1);
    let mut c = Vec::with_capacity(m_max + 1);
    let mut log_scale = Vec::with_capacity(m_max + 1);
    let deep = R::of(-690.0);
    for m in 0..=m_max {
        let ln_m = val[m].abs().ln() + ls[m] - ln0;
        let sign = val[m].signum() * sign0;
        let (stored, shift) = if val[m].is_zero() {
            (R::zero(), R::zero())
        } else if ln_m > deep {
            (sign * ln_m.exp(), R::zero())
        } else {
            // keep deeply decayed entries in split form to dodge underflow
            let shift = ln_m - deep;
            (sign * deep.exp(), shift)
        };
        d.push(stored);
        c.push(upper_coeff(stored, dq.baseline(k, m), energy, params.epsilon));
        log_scale.push(shift);
    }

    Ok(CoefficientSequence { energy, d, c, log_scale, rescales, truncated: false })
}

/// Least-squares decay rate of ln |d_m| over the window [m_lo, m_hi]; the
/// returned value is positive for a decaying sequence.
pub fn fit_decay_rate<R: Real>(
    seq: &CoefficientSequence<R>,
    m_lo: usize,
    m_hi: usize,
) -> Result<R> {
    if m_hi >= seq.len() || m_hi < m_lo + 10 {
        return Err(CoreError::DegenerateWindow(format!(
            "window [{m_lo}, {m_hi}] too short or past the sequence end ({})",
            seq.len()
        )));
    }
    let n = R::of_usize(m_hi - m_lo + 1);
    let mut sx = R::zero();
    let mut sy = R::zero();
    for m in m_lo..=m_hi {
        let y = seq.ln_abs_d(m);
        if !y.is_finite() {
            return Err(CoreError::DegenerateWindow(format!("d_{m} is zero or non-finite")));
        }
        sx = sx + R::of_usize(m);
        sy = sy + y;
    }
    let (mx, my) = (sx / n, sy / n);
    let mut sxx = R::zero();
    let mut sxy = R::zero();
    for m in m_lo..=m_hi {
        let dx = R::of_usize(m) - mx;
        sxx = sxx + dx * dx;
        sxy = sxy + dx * (seq.ln_abs_d(m) - my);
    }
    Ok(-(sxy / sxx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::BargmannIndex;

    fn kix(p: i64, q: i64) -> BargmannIndex {
        BargmannIndex::new(p, q).unwrap()
    }

    fn unified(eps: f64, omega: f64, g: f64, p: i64, q: i64) -> ModelParams<f64> {
        ModelParams::unified(eps, omega, g, kix(p, q)).unwrap()
    }

    fn settings() -> RecurrenceSettings<f64> {
        RecurrenceSettings::default()
    }

    #[test]
    fn r_coeff_values() {
        assert!((r_coeff(0, 0.5f64) - 0.5).abs() < 1e-15);
        assert!((r_coeff(1, 0.25f64) - 0.4f64.sqrt()).abs() < 1e-15);
        assert!(r_coeff(10_000, 0.75f64) > 0.9999);
    }

    #[test]
    fn r_coeff_monotone_in_unit_interval() {
        for &k in &[0.25f64, 0.5, 1.0, 2.5] {
            let mut last = 0.0;
            for m in 0..200 {
                let r = r_coeff(m, k);
                assert!(r > 0.0 && r < 1.0);
                assert!(r > last, "R_m must increase with m (k={k}, m={m})");
                last = r;
            }
        }
    }

    #[test]
    fn t0_decoupled_value() {
        // eps = 0, E = 0: T_0 = coth 2r = (omega^2 + 4g^2) / (4 g omega)
        let p = unified(0.0, 1.0, 0.4, 1, 2);
        let dq = p.derive().unwrap();
        let t0 = t_coeff(0, 0.0, &p, &dq, 1e-12).unwrap();
        assert!((t0 - 1.64 / 1.6).abs() < 1e-14, "got {t0}");
    }

    #[test]
    fn t_coeff_pole_rejected() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let dq = p.derive().unwrap();
        let baseline = dq.baseline(0.5, 3);
        let err = t_coeff(3, baseline, &p, &dq, 1e-12).unwrap_err();
        assert!(matches!(err, CoreError::BaselineCollision { index: 3, .. }));
    }

    #[test]
    fn t0_vanishes_at_first_juddian_coupling() {
        // g* = sqrt((omega^2 - eps^2/4) / (4 (2k+1))) makes T_0(E = beta(k+1)) = 0
        let g = (0.75f64 / 6.0).sqrt();
        let p = unified(1.0, 1.0, g, 1, 4);
        let dq = p.derive().unwrap();
        let e = dq.baseline(0.25, 1);
        let t0 = t_coeff(0, e, &p, &dq, 1e-12).unwrap();
        assert!(t0.abs() < 1e-13, "got {t0}");
    }

    #[test]
    fn forward_ratio_tends_to_dominant_rate() {
        // generic E: |d_{m+1} / d_m| -> omega / 2g, approached with an O(1/m)
        // correction proportional to 1/2 + E/beta
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let seq = forward_sequence(0.45, &p, 240, &settings()).unwrap();
        let ratio = ((seq.ln_abs_d(240) - seq.ln_abs_d(200)) / 40.0).exp();
        assert!((ratio - 1.25).abs() < 0.015, "ratio {ratio}");
        let shallow = ((seq.ln_abs_d(120) - seq.ln_abs_d(80)) / 40.0).exp();
        assert!(
            (ratio - 1.25).abs() < (shallow - 1.25).abs(),
            "limit should improve with depth: {shallow} then {ratio}"
        );
    }

    #[test]
    fn minimal_ratio_tends_to_decaying_rate() {
        // converged eigenvalue (lowest odd level at g = 0.4, k = 1/2)
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let e = 0.389_911_383_785_446;
        let seq = minimal_sequence(e, &p, 240, &settings()).unwrap();
        let ratio = ((seq.ln_abs_d(240) - seq.ln_abs_d(200)) / 40.0).exp();
        assert!((ratio - 0.8).abs() < 0.01, "ratio {ratio}");
        // and the coefficients only decay
        assert!(seq.ln_abs_d(240) < seq.ln_abs_d(20));
    }

    #[test]
    fn coefficient_relation_residual() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let dq = p.derive().unwrap();
        for &e in &[1.7f64, 0.52, -0.2] {
            let seq = forward_sequence(e, &p, 120, &settings()).unwrap();
            for m in 0..=120 {
                let den = dq.baseline(0.5, m) - e;
                let lhs = seq.c[m] * den;
                let rhs = 0.5 * p.epsilon * seq.d[m];
                let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                assert!(
                    ((lhs - rhs) / scale).abs() < 1e-13,
                    "m={m}: relation residual too large"
                );
            }
        }
    }

    /// Substituting (c, d) into the lower Schroedinger row must leave only
    /// rounding residuals for every interior index.
    #[test]
    fn lower_row_residual() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let dq = p.derive().unwrap();
        let k = 0.5f64;
        for &e in &[1.7f64, 0.52] {
            let seq = forward_sequence(e, &p, 100, &settings()).unwrap();
            let dmax = (0..=100).map(|m| seq.d[m].abs()).fold(0.0f64, f64::max);
            for m in 1..100 {
                let lower = (m as f64 * (m as f64 + 2.0 * k - 1.0)).sqrt() * seq.d[m - 1];
                let upper = ((m as f64 + 1.0) * (m as f64 + 2.0 * k)).sqrt() * seq.d[m + 1];
                let row = -0.5 * p.epsilon * seq.c[m]
                    + dq.beta
                        * (dq.cosh_2r * (k + m as f64) * seq.d[m]
                            - 0.5 * dq.sinh_2r * (lower + upper))
                    - e * seq.d[m];
                assert!(row.abs() <= 1e-10 * dmax, "row {m}: residual {row:e}");
            }
        }
    }

    #[test]
    fn epsilon_zero_leaves_upper_components_empty() {
        let p = unified(0.0, 1.0, 0.4, 1, 2);
        let seq = forward_sequence(0.37, &p, 40, &settings()).unwrap();
        assert!(seq.c.iter().all(|&x| x == 0.0));
        // and baselines are not treated as poles
        let dq = p.derive().unwrap();
        let on_baseline = forward_sequence(dq.baseline(0.5, 1), &p, 40, &settings());
        assert!(on_baseline.is_ok());
    }

    #[test]
    fn overflow_rescaling_keeps_ratios() {
        // small g makes the dominant branch grow like (omega/2g)^m = 10^m,
        // forcing rescales well before m = 400
        let p = unified(1.0, 1.0, 0.05, 1, 2);
        let seq = forward_sequence(2.3, &p, 400, &settings()).unwrap();
        assert!(seq.rescales > 0, "expected at least one rescale");
        assert!(!seq.truncated);
        assert!(seq.d.iter().all(|x| x.is_finite()));
        let rate = (seq.ln_abs_d(380) - seq.ln_abs_d(340)) / 40.0;
        assert!((rate.exp() - 10.0).abs() < 0.2, "rate {}", rate.exp());
    }

    #[test]
    fn decay_fit_at_eigenvalue_matches_rate() {
        // frozen G-roots of the lowest odd level, k = 1/2
        let cases = [(0.4f64, 0.389_911_383_785_446f64), (0.25, 0.681_542_747_646_710)];
        for (g, e) in cases {
            let p = unified(1.0, 1.0, g, 1, 2);
            let seq = minimal_sequence(e, &p, 170, &settings()).unwrap();
            let fit = fit_decay_rate(&seq, 60, 160).unwrap();
            let expect = (1.0 / (2.0 * g)).ln();
            assert!(
                (fit - expect).abs() < 0.01 * expect,
                "g={g}: fit {fit} vs {expect}"
            );
        }
    }

    #[test]
    fn growth_fit_off_eigenvalue() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let seq = forward_sequence(0.45, &p, 220, &settings()).unwrap();
        let fit = fit_decay_rate(&seq, 100, 200).unwrap();
        let expect = -(1.25f64).ln();
        assert!((fit - expect).abs() < 0.1 * expect.abs(), "fit {fit} vs {expect}");
    }

    #[test]
    fn fit_window_validation() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let seq = forward_sequence(1.7, &p, 50, &settings()).unwrap();
        assert!(matches!(fit_decay_rate(&seq, 10, 15), Err(CoreError::DegenerateWindow(_))));
        assert!(matches!(fit_decay_rate(&seq, 10, 90), Err(CoreError::DegenerateWindow(_))));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn relation_holds_for_random_energies(
                frac in 0.05f64..0.45,
                e in -0.9f64..3.5,
                eps in 0.1f64..2.0,
            ) {
                let p = unified(eps, 1.0, frac, 1, 2);
                let dq = p.derive().unwrap();
                // skip draws that happen to sit on a baseline
                if let Some(m) = dq.nearest_baseline(0.5, e) {
                    prop_assume!((dq.baseline(0.5, m) - e).abs() > 1e-6);
                }
                let seq = forward_sequence(e, &p, 60, &settings()).unwrap();
                for m in 0..=60 {
                    let den = dq.baseline(0.5, m) - e;
                    let lhs = seq.c[m] * den;
                    let rhs = 0.5 * eps * seq.d[m];
                    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                    prop_assert!(((lhs - rhs) / scale).abs() < 1e-13);
                }
            }
        }
    }
}
