//! The parity-resolved G-function and the regular spectrum.
//!
//! Projecting the parity eigenvalue equation onto the lowest ladder state
//! turns the eigenvalue problem into a scalar condition
//!
//!   G_k^P(E) = sum_m (d_m - P c_m) (1-xi^2)^k sqrt(G(2k+m)/(m! G(2k))) xi^m,
//!
//! whose zeros are the eigenvalues of parity P. Even though the forward
//! recurrence feeds the growing branch of d_m into the sum, the term ratio
//! approaches (omega/2g) xi = (1+xi^2)/2 < 1, so the series always converges
//! geometrically. Baselines E = beta (k+m) are simple poles of G through c_m
//! and are excluded by a deterministic window around each of them.

use crate::bisect::bisect;
use crate::derived::DerivedQuantities;
use crate::error::{CoreError, Result};
use crate::params::{ModelParams, Parity, Realization};
use crate::real::Real;
use crate::recurrence::{r_coeff, t_coeff};
use crate::special::ln_weight_ratio;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GfunSettings<R> {
    /// Relative size under which the last series terms count as converged.
    pub series_tol: R,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Pole guard relative to omega. The exclusion window around each
    /// baseline is ten times this.
    pub pole_guard_rel: R,
    /// A refined root is accepted only if |G| there is below this fraction
    /// of the median |G| over the scan grid; pole crossings fail this.
    pub accept_rel: R,
    /// Bisection stop width relative to omega (0 runs to machine precision).
    pub bisect_tol_rel: R,
    /// Grid density per unit of beta used by [`spectrum`].
    pub grid_per_beta: usize,
}

impl<R: Real> Default for GfunSettings<R> {
    fn default() -> Self {
        GfunSettings {
            series_tol: R::of(1e-14),
            max_terms: 500,
            pole_guard_rel: R::of(1e-12),
            accept_rel: R::of(1e-8),
            bisect_tol_rel: R::zero(),
            grid_per_beta: 160,
        }
    }
}

/// One G-function evaluation with its convergence metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GEvaluation<R> {
    pub energy: R,
    pub parity: Parity,
    pub value: R,
    pub terms_used: usize,
    /// Magnitude of the last included term relative to the running sum.
    pub truncation_estimate: R,
    pub converged: bool,
}

/// A refined root of G together with the residual |G| at the root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GRoot<R> {
    pub energy: R,
    pub residual: R,
}

/// Overlap of the bare lowest state with the squeezed ladder state,
/// `<k,0|k,m>_+ = (1-xi^2)^k sqrt(G(2k+m)/(m! G(2k))) xi^m`, evaluated
/// through log-gamma so large m cannot overflow.
pub fn overlap_coeff<R: Real>(k_value: R, m: usize, xi: R) -> R {
    let ln = k_value * (R::one() - xi * xi).ln()
        + R::half() * ln_weight_ratio(R::two() * k_value, m)
        + R::of_usize(m) * xi.ln();
    ln.exp()
}

fn require_unified<R: Real>(params: &ModelParams<R>) -> Result<()> {
    if params.realization != Realization::Unified {
        return Err(CoreError::InvalidParams(
            "G-function operations expect unified-frame parameters; map the model first".into(),
        ));
    }
    Ok(())
}

struct SeriesCursor<'a, R: Real> {
    params: &'a ModelParams<R>,
    dq: DerivedQuantities<R>,
    guard: R,
    k: R,
    sign: R,
    ln_prefix: R,
    ln_xi: R,
    m: usize,
    d_prev: R,
    d_cur: R,
    log_scale: R,
}

impl<'a, R: Real> SeriesCursor<'a, R> {
    fn new(
        energy: R,
        parity: Parity,
        params: &'a ModelParams<R>,
        max_terms: usize,
        pole_guard_rel: R,
    ) -> Result<Self> {
        require_unified(params)?;
        let dq = params.derive()?;
        let guard = pole_guard_rel * params.omega;
        let k = params.k_value();
        if !params.epsilon.is_zero() {
            if let Some(m) = dq.nearest_baseline(k, energy) {
                if m <= max_terms {
                    let base = dq.baseline(k, m);
                    if (base - energy).abs() < guard {
                        return Err(CoreError::BaselineCollision {
                            index: m,
                            baseline: base.as_f64(),
                            energy: energy.as_f64(),
                        });
                    }
                }
            }
        }
        Ok(SeriesCursor {
            params,
            guard,
            sign: parity.sign(),
            ln_prefix: k * (R::one() - dq.xi * dq.xi).ln(),
            ln_xi: dq.xi.ln(),
            k,
            dq,
            m: 0,
            d_prev: R::zero(),
            d_cur: R::one(),
            log_scale: R::zero(),
        })
    }

    /// Term (d_m - P c_m) w_m xi^m for the current m, then advances the
    /// recurrence. Assembled in log space so a scaled d still produces the
    /// true term value.
    fn next_term(&mut self, energy: R) -> Result<R> {
        let m = self.m;
        let c = if self.params.epsilon.is_zero() {
            R::zero()
        } else {
            self.params.epsilon * self.d_cur
                / (R::two() * (self.dq.baseline(self.k, m) - energy))
        };
        let ln_w = self.ln_prefix
            + R::half() * ln_weight_ratio(R::two() * self.k, m)
            + R::of_usize(m) * self.ln_xi
            + self.log_scale;
        let term = (self.d_cur - self.sign * c) * ln_w.exp();

        let t = t_coeff(m, energy, self.params, &self.dq, self.guard)?;
        let mut next = if m == 0 {
            t * self.d_cur
        } else {
            t * self.d_cur - r_coeff(m - 1, self.k) * self.d_prev
        };
        if next.abs() > R::of(1e250) {
            let f = R::of(1e-200);
            next = next * f;
            self.d_cur = self.d_cur * f;
            self.log_scale = self.log_scale + R::of(460.51701859880916);
        }
        self.d_prev = self.d_cur;
        self.d_cur = next;
        self.m += 1;
        Ok(term)
    }
}

/// Evaluates G at one trial energy.
///
/// The sum stops once at least 20 terms are in and the last five are each
/// below `series_tol` relative to the running sum, or at `max_terms` with
/// `converged` reporting whether the tail estimate met the tolerance.
pub fn evaluate<R: Real>(
    energy: R,
    parity: Parity,
    params: &ModelParams<R>,
    settings: &GfunSettings<R>,
) -> Result<GEvaluation<R>> {
    let mut cursor = SeriesCursor::new(energy, parity, params, settings.max_terms, settings.pole_guard_rel)?;
    let floor = R::of(1e-280);
    let mut sum = R::zero();
    let mut consec = 0usize;
    let mut estimate = R::infinity();
    let mut used = settings.max_terms + 1;
    for m in 0..=settings.max_terms {
        let term = cursor.next_term(energy)?;
        sum = sum + term;
        estimate = term.abs() / sum.abs().max(floor);
        if estimate <= settings.series_tol {
            consec += 1;
        } else {
            consec = 0;
        }
        if m >= 20 && consec >= 5 {
            used = m + 1;
            break;
        }
    }
    let converged = used <= settings.max_terms || estimate <= settings.series_tol;
    Ok(GEvaluation {
        energy,
        parity,
        value: sum,
        terms_used: used.min(settings.max_terms + 1),
        truncation_estimate: estimate,
        converged,
    })
}

/// First `count` series terms, exposed for convergence diagnostics.
pub fn series_terms<R: Real>(
    energy: R,
    parity: Parity,
    params: &ModelParams<R>,
    count: usize,
    settings: &GfunSettings<R>,
) -> Result<Vec<R>> {
    let mut cursor = SeriesCursor::new(energy, parity, params, count, settings.pole_guard_rel)?;
    (0..count).map(|_| cursor.next_term(energy)).collect()
}

/// Baselines beta (k+m) lying inside [lo, hi].
pub fn baselines_in<R: Real>(dq: &DerivedQuantities<R>, k_value: R, lo: R, hi: R) -> Vec<R> {
    let mut out = Vec::new();
    let mut m = 0usize;
    loop {
        let b = dq.baseline(k_value, m);
        if b > hi {
            break;
        }
        if b >= lo {
            out.push(b);
        }
        m += 1;
        if m > 1_000_000 {
            break;
        }
    }
    out
}

/// Scans [e_lo, e_hi] for roots of G at the given parity.
///
/// Windows of half-width ten pole guards around every baseline are excluded
/// from evaluation; grid intervals spanning a baseline are split at the
/// window edges so a pole sign flip is never mistaken for a bracket. Each
/// bracketed sign change is refined by bisection and kept only if |G| at the
/// refined point has actually collapsed below `accept_rel` times the median
/// |G| of the grid.
pub fn scan_roots<R: Real>(
    e_lo: R,
    e_hi: R,
    parity: Parity,
    params: &ModelParams<R>,
    grid_n: usize,
    settings: &GfunSettings<R>,
) -> Result<Vec<GRoot<R>>> {
    require_unified(params)?;
    if !(e_lo.is_finite() && e_hi.is_finite()) || e_lo >= e_hi {
        return Err(CoreError::InvalidParams("empty or non-finite energy range".into()));
    }
    if grid_n < 2 {
        return Err(CoreError::InvalidParams("grid_n must be >= 2".into()));
    }
    let dq = params.derive()?;
    let k = params.k_value();
    let window = R::of(10.0) * settings.pole_guard_rel * params.omega;

    // with epsilon = 0 the G-function has no baseline poles at all
    let poles = if params.epsilon.is_zero() {
        Vec::new()
    } else {
        baselines_in(&dq, k, e_lo - window, e_hi + window)
    };

    let step = (e_hi - e_lo) / R::of_usize(grid_n - 1);
    let mut points: Vec<R> = (0..grid_n).map(|i| e_lo + step * R::of_usize(i)).collect();
    points.retain(|&e| poles.iter().all(|&b| (e - b).abs() >= window));
    for &b in &poles {
        for edge in [b - window, b + window] {
            if edge > e_lo && edge < e_hi {
                points.push(edge);
            }
        }
    }
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    points.dedup();

    let mut values = Vec::with_capacity(points.len());
    for &e in &points {
        values.push(evaluate(e, parity, params, settings)?.value);
    }

    let mut mags: Vec<R> = values.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let median = mags[mags.len() / 2];
    let accept = settings.accept_rel * median;

    let tol = settings.bisect_tol_rel * params.omega;
    let mut roots = Vec::new();
    for i in 0..points.len().saturating_sub(1) {
        let (a, b) = (points[i], points[i + 1]);
        if poles.iter().any(|&p| p > a && p < b) {
            continue;
        }
        let (fa, fb) = (values[i], values[i + 1]);
        if fa == R::zero() {
            roots.push(GRoot { energy: a, residual: R::zero() });
            continue;
        }
        if (fa > R::zero()) == (fb > R::zero()) {
            continue;
        }
        let (root, f_root) = bisect(a, b, fa, tol, |e| {
            evaluate(e, parity, params, settings).map(|ev| ev.value)
        })?;
        if f_root.abs() < accept {
            roots.push(GRoot { energy: root, residual: f_root.abs() });
        }
    }
    roots.sort_by(|a, b| a.energy.partial_cmp(&b.energy).expect("finite roots"));
    Ok(roots)
}

/// Where a spectrum entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelSource {
    /// Zero of the G-function.
    GRoot,
    /// Exact decoupled-limit level (g = 0), matching what a numerical
    /// diagonalization returns there.
    Oracle,
}

impl LevelSource {
    pub fn label(self) -> &'static str {
        match self {
            LevelSource::GRoot => "groot",
            LevelSource::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level<R> {
    pub energy: R,
    pub parity: Parity,
    pub source: LevelSource,
    pub residual: R,
}

/// Parity-labelled spectrum of one parameter set, reported in the model's
/// native energy frame (the realization shift is already applied).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult<R: Real> {
    pub params: ModelParams<R>,
    pub levels: Vec<Level<R>>,
    /// Baseline energies in the same frame as the levels.
    pub baselines: Vec<R>,
    /// Shift subtracted from unified energies, E_model = E_unified - shift.
    pub energy_shift: R,
}

/// Computes all levels up to `e_max` (native frame) for both parities.
///
/// For g = 0 the unified model decouples and the exact levels
/// omega (k+m) +/- eps/2 are emitted with [`LevelSource::Oracle`]; otherwise
/// the levels are G-function roots scanned from just below beta k - eps.
pub fn spectrum<R: Real>(
    params: &ModelParams<R>,
    e_max: R,
    settings: &GfunSettings<R>,
) -> Result<SpectrumResult<R>> {
    if !e_max.is_finite() {
        return Err(CoreError::InvalidParams("e_max must be finite".into()));
    }
    let (unified, shift) = params.to_unified();
    let e_max_u = e_max + shift;
    let k = unified.k_value();

    let mut levels: Vec<Level<R>> = Vec::new();
    let mut baselines = Vec::new();

    if unified.g.is_zero() {
        let mut m = 0usize;
        loop {
            let center = unified.omega * (k + R::of_usize(m));
            let half = unified.epsilon / R::two();
            if center - half > e_max_u {
                break;
            }
            for (spin_up, e) in [(false, center - half), (true, center + half)] {
                if e <= e_max_u {
                    levels.push(Level {
                        energy: e - shift,
                        parity: Parity::of_basis_state(spin_up, m),
                        source: LevelSource::Oracle,
                        residual: R::zero(),
                    });
                }
            }
            if center > e_max_u {
                break;
            }
            m += 1;
        }
        let mut m = 0usize;
        while unified.omega * (k + R::of_usize(m)) <= e_max_u {
            baselines.push(unified.omega * (k + R::of_usize(m)) - shift);
            m += 1;
        }
    } else {
        let dq = unified.derive()?;
        let e_lo = dq.beta * k - unified.epsilon;
        if e_lo >= e_max_u {
            return Err(CoreError::InvalidParams("e_max below the scan window".into()));
        }
        let span = (e_max_u - e_lo) / dq.beta;
        let grid_n = (span * R::of_usize(settings.grid_per_beta))
            .ceil()
            .to_usize()
            .unwrap_or(64)
            .max(64);
        for parity in Parity::BOTH {
            for root in scan_roots(e_lo, e_max_u, parity, &unified, grid_n, settings)? {
                levels.push(Level {
                    energy: root.energy - shift,
                    parity,
                    source: LevelSource::GRoot,
                    residual: root.residual,
                });
            }
        }
        baselines = baselines_in(&dq, k, e_lo, e_max_u)
            .into_iter()
            .map(|b| b - shift)
            .collect();
    }

    levels.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .expect("finite levels")
            .then_with(|| (a.parity == Parity::Odd).cmp(&(b.parity == Parity::Odd)))
    });
    Ok(SpectrumResult { params: params.clone(), levels, baselines, energy_shift: shift })
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

    fn cfg() -> GfunSettings<f64> {
        GfunSettings::default()
    }

    #[test]
    fn overlap_lowest_term() {
        for (k, xi) in [(0.25f64, 0.3f64), (0.5, 0.5), (1.5, 0.8)] {
            let w = overlap_coeff(k, 0, xi);
            assert!((w - (1.0 - xi * xi).powf(k)).abs() < 1e-14);
        }
    }

    #[test]
    fn overlap_known_value() {
        // k = 1/2, m = 1, xi = 0.5: sqrt(0.75) * 0.5
        let w = overlap_coeff(0.5f64, 1, 0.5);
        assert!((w - 0.75f64.sqrt() * 0.5).abs() < 1e-14, "got {w}");
    }

    #[test]
    fn overlap_squares_sum_to_one() {
        for k in [0.25f64, 0.5, 1.0, 1.5] {
            for xi in [0.1f64, 0.5, 0.9] {
                let mut sum = 0.0;
                for m in 0..5000 {
                    let w = overlap_coeff(k, m, xi);
                    sum += w * w;
                    if w * w < 1e-18 && m > 20 {
                        break;
                    }
                }
                assert!((sum - 1.0).abs() < 1e-12, "k={k} xi={xi}: sum {sum}");
            }
        }
    }

    #[test]
    fn figure_benchmark_energy_is_an_odd_root() {
        // second level at eps = omega = 1, g = 0.4, k = 1/2
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let ev = evaluate(0.38991138, Parity::Odd, &p, &cfg()).unwrap();
        assert!(ev.converged);
        assert!(ev.value.abs() <= 1e-6, "G = {}", ev.value);
        // and decisively nonzero for the other parity
        let other = evaluate(0.38991138, Parity::Even, &p, &cfg()).unwrap();
        assert!(other.value.abs() > 1.0);
    }

    #[test]
    fn tolerance_consistency() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let loose = GfunSettings { series_tol: 1e-10, ..cfg() };
        for e in [1.7f64, 0.5, 2.5, -0.2] {
            let a = evaluate(e, Parity::Even, &p, &cfg()).unwrap();
            let b = evaluate(e, Parity::Even, &p, &loose).unwrap();
            assert!((a.value - b.value).abs() < 1e-9, "E={e}");
            assert!(b.terms_used < a.terms_used);
        }
    }

    #[test]
    fn pole_rejected_near_baseline() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let dq = p.derive().unwrap();
        let b = dq.baseline(0.5, 1);
        assert!(matches!(
            evaluate(b + 1e-14, Parity::Even, &p, &cfg()),
            Err(CoreError::BaselineCollision { index: 1, .. })
        ));
    }

    #[test]
    fn decoupled_limit_collapses_roots_onto_baselines() {
        // With eps = 0 exactly, c_m vanishes and G loses both its poles and
        // its parity dependence; it reduces to a strictly positive squeezed
        // overlap with no roots at all. The displaced-ladder pattern is
        // recovered as the eps -> 0 limit: for tiny eps each baseline
        // carries one even and one odd root straddling it at O(eps).
        let decoupled = unified(0.0, 1.0, 0.4, 1, 2);
        let dq = decoupled.derive().unwrap();
        for m in 0..4 {
            let b = dq.baseline(0.5, m);
            let plus = evaluate(b, Parity::Even, &decoupled, &cfg()).unwrap();
            let minus = evaluate(b, Parity::Odd, &decoupled, &cfg()).unwrap();
            assert_eq!(plus.value, minus.value);
            assert!(plus.value > 0.1, "m={m}: {}", plus.value);
        }

        let eps = 1e-6;
        let p = unified(eps, 1.0, 0.4, 1, 2);
        for m in 0..4 {
            let b = dq.baseline(0.5, m);
            for parity in Parity::BOTH {
                let roots =
                    scan_roots(b - 2.0 * eps, b + 2.0 * eps, parity, &p, 40, &cfg()).unwrap();
                assert_eq!(roots.len(), 1, "m={m} {parity}");
                assert!(
                    (roots[0].energy - b).abs() < eps,
                    "m={m} {parity}: root {} vs baseline {b}",
                    roots[0].energy
                );
            }
        }
    }

    #[test]
    fn scan_finds_frozen_low_roots() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let even = scan_roots(-0.5, 1.0, Parity::Even, &p, 400, &cfg()).unwrap();
        let odd = scan_roots(-0.5, 1.0, Parity::Odd, &p, 400, &cfg()).unwrap();
        assert!((even[0].energy - -0.093_681_228_0).abs() < 1e-8, "{}", even[0].energy);
        assert!((odd[0].energy - 0.389_911_383_8).abs() < 1e-8, "{}", odd[0].energy);
        assert!((even[1].energy - 0.807_982_906_1).abs() < 1e-8, "{}", even[1].energy);
    }

    #[test]
    fn scan_does_not_report_pole_flips() {
        // the first baseline (0.3) lies inside this window; the sign flip
        // across it must not surface as a root
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let roots = scan_roots(0.15, 0.35, Parity::Even, &p, 300, &cfg()).unwrap();
        assert!(roots.is_empty(), "unexpected roots {roots:?}");
    }

    #[test]
    fn root_set_stable_under_grid_refinement() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let coarse = scan_roots(-0.5, 3.0, Parity::Odd, &p, 500, &cfg()).unwrap();
        let fine = scan_roots(-0.5, 3.0, Parity::Odd, &p, 1000, &cfg()).unwrap();
        assert_eq!(coarse.len(), fine.len());
        for (a, b) in coarse.iter().zip(&fine) {
            assert!((a.energy - b.energy).abs() < 1e-10);
        }
    }

    #[test]
    fn weak_coupling_pattern() {
        // g -> 0: levels approach omega (k+m) +/- eps/2. The lone ground
        // level converges at O(g^2); degenerate pairs split by O(g) but
        // their means converge at O(g^2) as well.
        let run = |g: f64| {
            let p = unified(1.0, 1.0, g, 1, 2);
            let even = scan_roots(-0.5, 2.4, Parity::Even, &p, 2000, &cfg()).unwrap();
            let odd = scan_roots(-0.5, 2.4, Parity::Odd, &p, 2000, &cfg()).unwrap();
            (even, odd)
        };
        let (even, odd) = run(0.05);
        let g2 = 0.05f64 * 0.05;
        assert!((even[0].energy - 0.0).abs() < 2.0 * g2, "ground {}", even[0].energy);
        let odd_mean = 0.5 * (odd[0].energy + odd[1].energy);
        assert!((odd_mean - 1.0).abs() < 4.0 * g2, "odd pair mean {odd_mean}");
        assert!((odd[0].energy - odd[1].energy).abs() < 3.0 * 0.05);

        // ground deviation shrinks like g^2
        let (even_small, _) = run(0.02);
        let dev_small = (even_small[0].energy - 0.0).abs();
        let dev_big = (even[0].energy - 0.0).abs();
        assert!(dev_small < 0.3 * dev_big, "{dev_small} vs {dev_big}");
    }

    #[test]
    fn spectrum_decoupled_limit_is_exact() {
        let p = ModelParams::unified(1.0, 1.0, 0.0, kix(1, 2)).unwrap();
        let sp = spectrum(&p, 3.2, &cfg()).unwrap();
        let expect = [
            (0.0, Parity::Even),
            (1.0, Parity::Odd),
            (1.0, Parity::Odd),
            (2.0, Parity::Even),
            (2.0, Parity::Even),
            (3.0, Parity::Odd),
            (3.0, Parity::Odd),
        ];
        assert_eq!(sp.levels.len(), expect.len());
        for (lv, (e, par)) in sp.levels.iter().zip(expect) {
            assert_eq!(lv.energy, e);
            assert_eq!(lv.parity, par);
            assert_eq!(lv.source, LevelSource::Oracle);
        }
    }

    #[test]
    fn spectrum_shifts_realization_frame() {
        let u = unified(1.0, 1.0, 0.4, 1, 4);
        let tp = ModelParams::new(1.0, 0.5, 0.2, kix(1, 4), Realization::TwoPhoton).unwrap();
        let cfg = cfg();
        let su = spectrum(&u, 3.0, &cfg).unwrap();
        let st = spectrum(&tp, 2.75, &cfg).unwrap();
        assert_eq!(su.levels.len(), st.levels.len());
        for (a, b) in su.levels.iter().zip(&st.levels) {
            assert!((a.energy - (b.energy + 0.25)).abs() < 1e-10);
            assert_eq!(a.parity, b.parity);
        }
        for (a, b) in su.baselines.iter().zip(&st.baselines) {
            assert!((a - (b + 0.25)).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_levels_sorted_with_baselines() {
        let p = unified(1.0, 1.0, 0.4, 1, 2);
        let sp = spectrum(&p, 4.0, &cfg()).unwrap();
        assert!(sp.levels.windows(2).all(|w| w[0].energy <= w[1].energy));
        assert!(sp.levels.len() >= 10);
        assert_eq!(sp.baselines.len(), 7); // 0.3, 0.9, ..., 3.9
        assert!(sp.levels.iter().all(|l| l.residual < 1e-8));
    }
}
