//! The five subcommands.

use std::path::PathBuf;

use rayon::prelude::*;

use nlrabi_core::gfunction::{self, GfunSettings};
use nlrabi_core::isolated::{self, IsolatedOptions};
use nlrabi_core::params::{BargmannIndex, ModelParams, Parity, Realization};
use nlrabi_core::recurrence::{fit_decay_rate, forward_sequence, minimal_sequence, RecurrenceSettings};
use nlrabi_oracle::{eigen_sym, parity_spectrum, SpinBasis, TruncatedHamiltonian};

use crate::cli::{
    parse_index_range, parse_window, CoeffsArgs, CommonArgs, DiagArgs, GfunArgs, IsolatedArgs,
    RangeSpec, SpectrumArgs,
};
use crate::config::ConfigFile;
use crate::output::{Cell, Format, Table};
use crate::CliError;

struct Common {
    epsilon: f64,
    omega: f64,
    k: BargmannIndex,
    format: Format,
    out: Option<PathBuf>,
    jobs: usize,
}

fn resolve_common(args: &CommonArgs, cfg: &ConfigFile) -> Result<Common, CliError> {
    let epsilon = cfg.resolve(args.epsilon, "epsilon", 1.0)?;
    let omega = cfg.resolve(args.omega, "omega", 1.0)?;
    let k_str = cfg.resolve(args.k.clone(), "k", "1/2".to_string())?;
    let k: BargmannIndex =
        k_str.parse().map_err(|e: nlrabi_core::CoreError| CliError::Usage(e.to_string()))?;
    let format = Format::parse(&cfg.resolve(args.format.clone(), "format", "csv".to_string())?)?;
    let out = match &args.out {
        Some(p) => Some(p.clone()),
        None => cfg.get("out").map(PathBuf::from),
    };
    let jobs = cfg.resolve(args.jobs, "jobs", 1)?;
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be >= 1".into()));
    }
    Ok(Common { epsilon, omega, k, format, out, jobs })
}

fn parse_parity(choice: &str) -> Result<Vec<Parity>, CliError> {
    match choice {
        "even" => Ok(vec![Parity::Even]),
        "odd" => Ok(vec![Parity::Odd]),
        "both" => Ok(vec![Parity::Even, Parity::Odd]),
        other => Err(CliError::Usage(format!("unknown parity {other:?}"))),
    }
}

fn parse_realization(s: &str) -> Result<Realization, CliError> {
    s.parse().map_err(|e: nlrabi_core::CoreError| CliError::Usage(e.to_string()))
}

pub fn run_isolated(args: &IsolatedArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let common = resolve_common(&args.common, cfg)?;
    let m_spec = cfg.resolve(args.baselines.clone(), "M", "1..3".to_string())?;
    let (m_lo, m_hi) = parse_index_range(&m_spec).map_err(CliError::Usage)?;
    let grid = cfg.resolve(args.grid, "grid", 400)?;
    let tol = cfg.resolve(args.tol, "tol", 1e-12)?;
    let opts = IsolatedOptions { grid_n: grid, tol, ..IsolatedOptions::default() };

    if common.epsilon == 0.0 || common.omega.powi(2) <= common.epsilon.powi(2) / 4.0 {
        eprintln!(
            "warning: no isolated solutions exist for epsilon = {}, omega = {} \
             (need epsilon > 0 and omega^2 > epsilon^2/4)",
            common.epsilon, common.omega
        );
    }

    let mut table = Table::new("isolated", &["k", "M", "g_star", "E_star"]);
    table.meta_f64("epsilon", common.epsilon);
    table.meta_f64("omega", common.omega);
    table.meta("k", common.k);
    table.meta("M", format!("{m_lo}..{m_hi}"));
    table.meta("grid", grid);
    table.meta_f64("tol", tol);

    for m_index in m_lo..=m_hi {
        let sols = isolated::find(m_index, common.k, common.epsilon, common.omega, &opts)?;
        for sol in sols {
            table.push(vec![
                Cell::Text(common.k.to_string()),
                Cell::Int(m_index as i64),
                Cell::Float(sol.g_star),
                Cell::Float(sol.e_star),
            ]);
        }
    }
    table.emit(common.format, common.out.as_ref())
}

pub fn run_spectrum(args: &SpectrumArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let common = resolve_common(&args.common, cfg)?;
    let range: RangeSpec = cfg
        .resolve_required(args.g_range.clone(), "g-range")?
        .parse()
        .map_err(CliError::Usage)?;
    let realization = parse_realization(&cfg.resolve(
        args.realization.clone(),
        "realization",
        "unified".to_string(),
    )?)?;
    let parities = parse_parity(&cfg.resolve(args.parity.clone(), "parity", "both".to_string())?)?;
    let grid_per_beta = cfg.resolve(args.grid_per_beta, "grid-per-beta", 160)?;

    // fixed energy window for the whole sweep, default from the shift-free
    // part of the map so it does not depend on g
    let probe = ModelParams::new(common.epsilon, common.omega, range.lo, common.k, realization)
        .map_err(CoreUsage::wrap)?;
    let (probe_unified, shift) = probe.to_unified();
    let default_e_max =
        probe_unified.omega * (common.k.value::<f64>() + 5.0) + common.epsilon - shift;
    let e_max = cfg.resolve(args.e_max, "e-max", default_e_max)?;

    let settings = GfunSettings { grid_per_beta, ..GfunSettings::default() };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build()
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let points = range.points();
    let results: Vec<(f64, Result<nlrabi_core::SpectrumResult64, nlrabi_core::CoreError>)> =
        pool.install(|| {
            points
                .par_iter()
                .map(|&g| {
                    let r = ModelParams::new(common.epsilon, common.omega, g, common.k, realization)
                        .and_then(|p| gfunction::spectrum(&p, e_max, &settings));
                    (g, r)
                })
                .collect()
        });

    let mut table = Table::new("spectrum", &["g", "E", "kind", "parity", "source", "residual"]);
    table.meta_f64("epsilon", common.epsilon);
    table.meta_f64("omega", common.omega);
    table.meta("k", common.k);
    table.meta("realization", realization);
    table.meta("g_range", format!("{}:{}:{}", range.lo, range.hi, range.n));
    table.meta_f64("e_max", e_max);
    table.meta_f64("energy_shift", shift);
    table.meta("grid_per_beta", grid_per_beta);

    let mut failures = 0usize;
    for (g, result) in results {
        match result {
            Ok(sp) => {
                for level in &sp.levels {
                    if !parities.contains(&level.parity) {
                        continue;
                    }
                    table.push(vec![
                        Cell::Float(g),
                        Cell::Float(level.energy),
                        Cell::Text("level".into()),
                        Cell::Text(level.parity.label().into()),
                        Cell::Text(level.source.label().into()),
                        Cell::Float(level.residual),
                    ]);
                }
                for &b in &sp.baselines {
                    table.push(vec![
                        Cell::Float(g),
                        Cell::Float(b),
                        Cell::Text("baseline".into()),
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                    ]);
                }
            }
            Err(e) => {
                failures += 1;
                eprintln!("warning: sweep point g = {g} failed: {e}");
            }
        }
    }
    if failures > 0 {
        eprintln!("warning: {failures} of {} sweep points failed", points.len());
    }
    table.emit(common.format, common.out.as_ref())
}

pub fn run_gfun(args: &GfunArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let common = resolve_common(&args.common, cfg)?;
    let g = cfg.resolve_required(args.g, "g")?;
    let parities = parse_parity(&cfg.resolve(args.parity.clone(), "parity", "both".to_string())?)?;
    let params = ModelParams::unified(common.epsilon, common.omega, g, common.k)
        .map_err(CoreUsage::wrap)?;
    let dq = params.derive().map_err(CoreUsage::wrap)?;
    let kv = common.k.value::<f64>();

    let range: RangeSpec = match cfg.resolve(args.e_range.clone(), "E-range", String::new())? {
        s if s.is_empty() => {
            let lo = dq.beta * kv - common.epsilon;
            let hi = dq.baseline(kv, 6) + common.epsilon;
            let n = (((hi - lo) / dq.beta) * 160.0).ceil().clamp(200.0, 4000.0) as usize;
            RangeSpec { lo, hi, n }
        }
        s => s.parse().map_err(CliError::Usage)?,
    };

    let settings = GfunSettings::default();
    let window = 10.0 * settings.pole_guard_rel * common.omega;

    let mut columns = vec!["E"];
    if parities.contains(&Parity::Even) {
        columns.push("G_even");
    }
    if parities.contains(&Parity::Odd) {
        columns.push("G_odd");
    }
    columns.push("masked");

    let mut table = Table::new("gfun", &columns);
    table.meta_f64("epsilon", common.epsilon);
    table.meta_f64("omega", common.omega);
    table.meta_f64("g", g);
    table.meta("k", common.k);
    table.meta("E_range", format!("{}:{}:{}", range.lo, range.hi, range.n));
    table.meta_f64("series_tol", settings.series_tol);
    table.meta_f64("pole_window", window);

    for e in range.points() {
        let nearest = dq
            .nearest_baseline(kv, e)
            .map(|m| (dq.baseline(kv, m) - e).abs())
            .unwrap_or(f64::INFINITY);
        let masked = nearest < window;
        let mut row = vec![Cell::Float(e)];
        for &parity in &parities {
            if masked {
                row.push(Cell::Empty);
            } else {
                let ev = gfunction::evaluate(e, parity, &params, &settings)?;
                row.push(Cell::Float(ev.value));
            }
        }
        row.push(Cell::Text(if masked { "true".into() } else { "false".into() }));
        table.push(row);
    }

    let mut root_rows = Vec::new();
    for &parity in &parities {
        for root in gfunction::scan_roots(range.lo, range.hi, parity, &params, range.n, &settings)?
        {
            root_rows.push(vec![
                Cell::Text(parity.label().into()),
                Cell::Float(root.energy),
                Cell::Float(root.residual),
            ]);
        }
    }
    table.extras.push((
        "roots".into(),
        vec!["parity".into(), "E".into(), "residual".into()],
        root_rows,
    ));

    table.emit(common.format, common.out.as_ref())
}

pub fn run_coeffs(args: &CoeffsArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let common = resolve_common(&args.common, cfg)?;
    let g = cfg.resolve_required(args.g, "g")?;
    let energy_spec = cfg.resolve_required(args.energy.clone(), "E")?;
    let m_max = cfg.resolve(args.m_max, "m-max", 100)?;
    let fit_spec = cfg.resolve(args.fit.clone(), "fit", "20:60".to_string())?;
    let (fit_lo, fit_hi) = parse_window(&fit_spec).map_err(CliError::Usage)?;

    let params = ModelParams::unified(common.epsilon, common.omega, g, common.k)
        .map_err(CoreUsage::wrap)?;
    let dq = params.derive().map_err(CoreUsage::wrap)?;
    let kv = common.k.value::<f64>();
    let settings = GfunSettings::default();

    let (energy, selector) = if energy_spec == "lowest-odd" {
        let lo = dq.beta * kv - common.epsilon;
        let hi = dq.beta * kv + 2.0 * common.omega + common.epsilon;
        let n = (((hi - lo) / dq.beta) * 200.0).ceil().clamp(200.0, 4000.0) as usize;
        let roots = gfunction::scan_roots(lo, hi, Parity::Odd, &params, n, &settings)?;
        let first = roots.first().ok_or_else(|| {
            CliError::Runtime("no odd-parity level found in the default scan window".into())
        })?;
        (first.energy, "lowest-odd")
    } else {
        let e: f64 = energy_spec
            .parse()
            .map_err(|_| CliError::Usage(format!("--E expects a number or lowest-odd, got {energy_spec:?}")))?;
        (e, "explicit")
    };

    let method = cfg.resolve(
        args.method.clone(),
        "method",
        if selector == "lowest-odd" { "minimal".to_string() } else { "forward".to_string() },
    )?;
    let rec = RecurrenceSettings::default();
    let seq = match method.as_str() {
        "forward" => forward_sequence(energy, &params, m_max, &rec)?,
        "minimal" => minimal_sequence(energy, &params, m_max, &rec)?,
        other => return Err(CliError::Usage(format!("unknown method {other:?}"))),
    };

    let mut table = Table::new("coeffs", &["m", "d", "c", "ln_abs_d"]);
    table.meta_f64("epsilon", common.epsilon);
    table.meta_f64("omega", common.omega);
    table.meta_f64("g", g);
    table.meta("k", common.k);
    table.meta_f64("E", energy);
    table.meta("E_selector", selector);
    table.meta("method", &method);
    table.meta("m_max", m_max);
    table.meta("fit_window", format!("{fit_lo}:{fit_hi}"));
    match fit_decay_rate(&seq, fit_lo, fit_hi) {
        Ok(gamma) => table.meta_f64("gamma_fit", gamma),
        Err(e) => eprintln!("warning: decay fit skipped: {e}"),
    }
    table.meta_f64("gamma_ref", dq.decay_rate);
    table.meta_f64("reference_slope", -dq.decay_rate);

    for m in 0..=m_max {
        let scale = seq.log_scale[m];
        let (d, c) = if scale == 0.0 {
            (seq.d[m], seq.c[m])
        } else {
            (seq.d[m] * scale.exp(), seq.c[m] * scale.exp())
        };
        table.push(vec![
            Cell::Int(m as i64),
            Cell::Float(d),
            Cell::Float(c),
            Cell::Float(seq.ln_abs_d(m)),
        ]);
    }
    table.emit(common.format, common.out.as_ref())
}

pub fn run_diag(args: &DiagArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let common = resolve_common(&args.common, cfg)?;
    let g = cfg.resolve_required(args.g, "g")?;
    let n = cfg.resolve(args.n, "N", 400)?;
    if n < 4 {
        return Err(CliError::Usage("--N must be >= 4".into()));
    }
    let n_lowest = cfg.resolve(args.n_lowest, "n-lowest", 10)?;
    let realization = parse_realization(&cfg.resolve(
        args.realization.clone(),
        "realization",
        "unified".to_string(),
    )?)?;
    let basis = match cfg.resolve(args.basis.clone(), "basis", "sigma-z".to_string())?.as_str() {
        "sigma-z" => SpinBasis::SigmaZ,
        "sigma-x" => SpinBasis::SigmaX,
        other => return Err(CliError::Usage(format!("unknown basis {other:?}"))),
    };

    let params = ModelParams::new(common.epsilon, common.omega, g, common.k, realization)
        .map_err(CoreUsage::wrap)?;
    let (unified, _) = params.to_unified();
    if unified.g > 0.45 * unified.omega {
        eprintln!(
            "warning: g = {:.4} omega_u is close to the collapse point; a truncated \
             basis cannot be trusted there, see the N vs N/2 deltas",
            unified.g / unified.omega
        );
    }

    let build = |nn: usize| -> Result<TruncatedHamiltonian, CliError> {
        Ok(match realization {
            Realization::Unified => TruncatedHamiltonian::unified(&params, nn, basis),
            _ => TruncatedHamiltonian::realization(&params, nn)?,
        })
    };

    let full = build(n)?;
    let half = build(n / 2)?;
    let want = n_lowest.min(n);

    // parity labels are available whenever the matrix is sigma-z
    let (values, parities): (Vec<f64>, Vec<Option<Parity>>) = if basis == SpinBasis::SigmaZ {
        let sp = parity_spectrum(&full, want)?;
        (sp.iter().map(|x| x.0).collect(), sp.iter().map(|x| Some(x.1)).collect())
    } else {
        let vals = eigen_sym(&full, want)?;
        let pars = vec![None; vals.len()];
        (vals, pars)
    };
    let half_values = if basis == SpinBasis::SigmaZ {
        parity_spectrum(&half, want)?.iter().map(|x| x.0).collect::<Vec<_>>()
    } else {
        eigen_sym(&half, want)?
    };

    let mut table = Table::new("diag", &["index", "E", "parity", "delta_half_n"]);
    table.meta_f64("epsilon", common.epsilon);
    table.meta_f64("omega", common.omega);
    table.meta_f64("g", g);
    table.meta("k", common.k);
    table.meta("realization", realization);
    table.meta("basis", basis.label());
    table.meta("N", n);
    table.meta("n_lowest", n_lowest);

    for (i, &e) in values.iter().enumerate() {
        let delta = half_values.get(i).map(|h| (e - h).abs());
        table.push(vec![
            Cell::Int(i as i64),
            Cell::Float(e),
            match parities[i] {
                Some(p) => Cell::Text(p.label().into()),
                None => Cell::Empty,
            },
            match delta {
                Some(d) => Cell::Float(d),
                None => Cell::Empty,
            },
        ]);
    }
    table.emit(common.format, common.out.as_ref())
}

/// Maps validation-type core errors onto usage exits; genuine numerical
/// failures stay runtime errors.
struct CoreUsage;

impl CoreUsage {
    fn wrap(e: nlrabi_core::CoreError) -> CliError {
        use nlrabi_core::CoreError::*;
        match e {
            InvalidParams(_) | CouplingOutOfRange { .. } => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}
