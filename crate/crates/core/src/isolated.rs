//! Exact isolated (Juddian) solutions.
//!
//! On the baseline E = beta (k + M) the upper coefficient c_M only stays
//! finite if d_M = 0. That condition, a polynomial relation between epsilon,
//! omega and g, picks out special couplings g* where the baseline energy is
//! an exact eigenvalue and the eigenstate truncates to a finite ladder
//! polynomial. These points are the even/odd level crossings of the
//! spectrum.

use crate::bisect::bisect;
use crate::error::{CoreError, Result};
use crate::params::{BargmannIndex, ModelParams};
use crate::real::Real;
use crate::recurrence::{r_coeff, t_coeff, CoefficientSequence};
use crate::su11::lowering_coeff;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolatedOptions<R> {
    /// Grid points used to bracket sign changes of the residual over g.
    pub grid_n: usize,
    /// Bisection stop width for the coupling root.
    pub tol: R,
    /// Scan window as fractions of omega.
    pub g_lo_frac: R,
    pub g_hi_frac: R,
}

impl<R: Real> Default for IsolatedOptions<R> {
    fn default() -> Self {
        IsolatedOptions {
            grid_n: 400,
            tol: R::of(1e-12),
            g_lo_frac: R::of(1e-3),
            g_hi_frac: R::of(0.4999),
        }
    }
}

/// One Juddian point together with its finite closed-form eigenstate.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedSolution<R> {
    pub k: BargmannIndex,
    /// Baseline index M >= 1.
    pub baseline_index: usize,
    pub g_star: R,
    /// E* = sqrt(omega^2 - 4 g*^2) (k + M).
    pub e_star: R,
    /// Coefficients c_0..c_M and d_0..d_M (d_M = 0), normalized to unit
    /// Euclidean norm.
    pub state: CoefficientSequence<R>,
}

fn params_for<R: Real>(
    g: R,
    k: BargmannIndex,
    epsilon: R,
    omega: R,
) -> Result<ModelParams<R>> {
    if g <= R::zero() || g >= omega / R::two() {
        return Err(CoreError::CouplingOutOfRange { g: g.as_f64(), omega: omega.as_f64() });
    }
    ModelParams::unified(epsilon, omega, g, k)
}

/// d_M evaluated on the baseline E = beta (k + M); its zeros in g are the
/// isolated solutions. The denominators hit inside the recurrence are
/// beta (m - M) with m < M, so no pole can trigger.
pub fn residual<R: Real>(
    g: R,
    baseline_index: usize,
    k: BargmannIndex,
    epsilon: R,
    omega: R,
) -> Result<R> {
    if baseline_index < 1 {
        return Err(CoreError::InvalidParams("baseline index must be >= 1".into()));
    }
    let params = params_for(g, k, epsilon, omega)?;
    let dq = params.derive()?;
    let energy = dq.baseline(params.k_value(), baseline_index);
    let guard = R::of(1e-12) * omega;
    let kv = params.k_value();

    let mut prev = R::zero();
    let mut cur = R::one();
    for m in 0..baseline_index {
        let t = t_coeff(m, energy, &params, &dq, guard)?;
        let next = if m == 0 { t * cur } else { t * cur - r_coeff(m - 1, kv) * prev };
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Leading principal minor P_M of the tridiagonal condition matrix, the
/// determinant form of the same zero condition. P_M = (-1)^M d_M, kept as an
/// independent cross-check of [`residual`]. Minors are rescaled by their
/// running magnitude so large M cannot overflow; zeros in g are unaffected.
pub fn minor_residual<R: Real>(
    g: R,
    baseline_index: usize,
    k: BargmannIndex,
    epsilon: R,
    omega: R,
) -> Result<R> {
    if baseline_index < 1 {
        return Err(CoreError::InvalidParams("baseline index must be >= 1".into()));
    }
    let params = params_for(g, k, epsilon, omega)?;
    let dq = params.derive()?;
    let energy = dq.baseline(params.k_value(), baseline_index);
    let guard = R::of(1e-12) * omega;
    let kv = params.k_value();
    let cap = R::of(1e200);

    let mut prev = R::one(); // P_0
    let mut cur = -t_coeff(0, energy, &params, &dq, guard)?; // P_1
    for n in 2..=baseline_index {
        let t = t_coeff(n - 1, energy, &params, &dq, guard)?;
        let next = -t * cur - r_coeff(n - 2, kv) * prev;
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > cap {
            cur = cur / mag;
            prev = prev / mag;
        }
    }
    Ok(cur)
}

/// Builds the finite closed-form eigenstate at a Juddian point. The last
/// upper coefficient comes from the lower Schroedinger row with
/// d_M = d_{M+1} = 0, which needs epsilon != 0.
pub fn closed_form_state<R: Real>(
    g_star: R,
    baseline_index: usize,
    k: BargmannIndex,
    epsilon: R,
    omega: R,
) -> Result<CoefficientSequence<R>> {
    if epsilon.is_zero() {
        return Err(CoreError::DecoupledState);
    }
    if baseline_index < 1 {
        return Err(CoreError::InvalidParams("baseline index must be >= 1".into()));
    }
    let params = params_for(g_star, k, epsilon, omega)?;
    let dq = params.derive()?;
    let kv = params.k_value();
    let m_top = baseline_index;
    let energy = dq.baseline(kv, m_top);
    let guard = R::of(1e-12) * omega;

    let mut d = Vec::with_capacity(m_top + 1);
    d.push(R::one());
    for m in 0..m_top {
        let t = t_coeff(m, energy, &params, &dq, guard)?;
        let next = if m == 0 {
            t * d[0]
        } else {
            t * d[m] - r_coeff(m - 1, kv) * d[m - 1]
        };
        d.push(next);
    }
    // the trailing coefficient vanishes by construction at the root
    d[m_top] = R::zero();

    let mut c = Vec::with_capacity(m_top + 1);
    for (m, dm) in d.iter().enumerate().take(m_top) {
        c.push(epsilon * *dm / (R::two() * (dq.baseline(kv, m) - energy)));
    }
    c.push(-dq.beta * dq.sinh_2r * lowering_coeff(kv, m_top) * d[m_top - 1] / epsilon);

    let norm = (d.iter().chain(c.iter()).map(|x| *x * *x).sum::<R>()).sqrt();
    for x in d.iter_mut().chain(c.iter_mut()) {
        *x = *x / norm;
    }

    Ok(CoefficientSequence {
        energy,
        log_scale: vec![R::zero(); m_top + 1],
        d,
        c,
        rescales: 0,
        truncated: false,
    })
}

/// Scans (0, omega/2) for couplings where the baseline carries an exact
/// eigenvalue. Returns the solutions sorted by coupling; the list is empty
/// when epsilon = 0 or omega^2 <= epsilon^2/4, where the M = 1 closed form
/// already shows no real root exists.
pub fn find<R: Real>(
    baseline_index: usize,
    k: BargmannIndex,
    epsilon: R,
    omega: R,
    opts: &IsolatedOptions<R>,
) -> Result<Vec<IsolatedSolution<R>>> {
    if baseline_index < 1 {
        return Err(CoreError::InvalidParams("baseline index must be >= 1".into()));
    }
    if omega <= R::zero() {
        return Err(CoreError::InvalidParams("omega must be > 0".into()));
    }
    if epsilon.is_zero() || omega * omega <= epsilon * epsilon / R::of(4.0) {
        return Ok(Vec::new());
    }
    if opts.grid_n < 2 {
        return Err(CoreError::InvalidParams("grid_n must be >= 2".into()));
    }

    let g_lo = opts.g_lo_frac * omega;
    let g_hi = opts.g_hi_frac * omega;
    let step = (g_hi - g_lo) / R::of_usize(opts.grid_n - 1);

    let mut out = Vec::new();
    let mut prev: Option<(R, R)> = None;
    for i in 0..opts.grid_n {
        let g = g_lo + step * R::of_usize(i);
        let val = residual(g, baseline_index, k, epsilon, omega)?;
        if let Some((g0, v0)) = prev {
            if v0 == R::zero() || (v0 > R::zero()) != (val > R::zero()) {
                let (g_star, _) = bisect(g0, g, v0, opts.tol, |x| {
                    residual(x, baseline_index, k, epsilon, omega)
                })?;
                let e_star = (omega * omega - R::of(4.0) * g_star * g_star).sqrt()
                    * (k.value::<R>() + R::of_usize(baseline_index));
                let state = closed_form_state(g_star, baseline_index, k, epsilon, omega)?;
                out.push(IsolatedSolution { k, baseline_index, g_star, e_star, state });
            }
        }
        prev = Some((g, val));
    }
    Ok(out)
}
