//! Argument surface of the `nlrabi` binary.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

/// Spectra of the nonlinear Rabi models via their su(1,1) structure.
#[derive(Debug, Parser)]
#[command(name = "nlrabi", version, disable_help_subcommand = true)]
pub struct Cli {
    /// Optional key=value config file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact isolated (Juddian) couplings and energies on the baselines.
    Isolated(IsolatedArgs),
    /// Parity-labelled energy levels over a sweep of the coupling.
    Spectrum(SpectrumArgs),
    /// G-function values on an energy grid plus its roots.
    Gfun(GfunArgs),
    /// Ansatz coefficients c_m, d_m at one energy, with a decay-rate fit.
    Coeffs(CoeffsArgs),
    /// Truncated-basis diagonalization benchmark.
    Diag(DiagArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct CommonArgs {
    /// Two-level splitting.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Bosonic frequency (native to the chosen realization).
    #[arg(long)]
    pub omega: Option<f64>,
    /// Bargmann index, e.g. 1/4 or 0.5.
    #[arg(long)]
    pub k: Option<String>,
    /// Output format.
    #[arg(long, value_parser = ["csv", "json"])]
    pub format: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct IsolatedArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Baseline index or inclusive range, e.g. 2 or 1..3.
    #[arg(long, short = 'M')]
    pub baselines: Option<String>,
    /// Grid points for bracketing the coupling roots.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Bisection tolerance on the coupling.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coupling sweep as lo:hi:n.
    #[arg(long)]
    pub g_range: Option<String>,
    /// Upper edge of the reported energy window (native frame).
    #[arg(long)]
    pub e_max: Option<f64>,
    /// Model realization: unified, two-photon, two-mode or intensity.
    #[arg(long)]
    pub realization: Option<String>,
    /// Parity filter.
    #[arg(long, value_parser = ["even", "odd", "both"])]
    pub parity: Option<String>,
    /// G-scan grid density per unit of beta.
    #[arg(long)]
    pub grid_per_beta: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GfunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coupling strength.
    #[arg(long)]
    pub g: Option<f64>,
    /// Energy grid as lo:hi:n; defaults to the span of the first six
    /// baselines padded by epsilon.
    #[arg(long = "E-range")]
    pub e_range: Option<String>,
    /// Parity selection.
    #[arg(long, value_parser = ["even", "odd", "both"])]
    pub parity: Option<String>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coupling strength.
    #[arg(long)]
    pub g: Option<f64>,
    /// Trial energy: a number, or lowest-odd to use the lowest odd-parity
    /// level found by the G-scan.
    #[arg(long = "E")]
    pub energy: Option<String>,
    /// Largest coefficient index.
    #[arg(long)]
    pub m_max: Option<usize>,
    /// Fit window lo:hi for the decay rate of ln |d_m|.
    #[arg(long)]
    pub fit: Option<String>,
    /// forward runs the raw recurrence; minimal isolates the decaying
    /// branch (the eigenstate profile at an eigenvalue).
    #[arg(long, value_parser = ["forward", "minimal"])]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct DiagArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coupling strength.
    #[arg(long)]
    pub g: Option<f64>,
    /// Bosonic truncation per spin branch.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Model realization: unified, two-photon, two-mode or intensity.
    #[arg(long)]
    pub realization: Option<String>,
    /// Spin basis of the matrix.
    #[arg(long, value_parser = ["sigma-z", "sigma-x"])]
    pub basis: Option<String>,
    /// Number of low eigenvalues to report.
    #[arg(long)]
    pub n_lowest: Option<usize>,
}

/// lo:hi:n grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl RangeSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.lo + step * i as f64).collect()
    }
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:n, got {s:?}"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
        let hi: f64 = parts[1].parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
        let n: usize = parts[2].parse().map_err(|_| format!("bad point count in {s:?}"))?;
        if n == 0 || !lo.is_finite() || !hi.is_finite() || (n > 1 && hi <= lo) {
            return Err(format!("degenerate range {s:?}"));
        }
        Ok(RangeSpec { lo, hi, n })
    }
}

/// Inclusive index range, "2" or "1..3".
pub fn parse_index_range(s: &str) -> Result<(usize, usize), String> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
        let hi: usize = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
        if lo == 0 || hi < lo {
            return Err(format!("empty index range {s:?}"));
        }
        Ok((lo, hi))
    } else {
        let v: usize = s.trim().parse().map_err(|_| format!("bad index {s:?}"))?;
        if v == 0 {
            return Err("baseline index must be >= 1".into());
        }
        Ok((v, v))
    }
}

/// Window "lo:hi" of coefficient indices.
pub fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: usize = a.trim().parse().map_err(|_| format!("bad window start in {s:?}"))?;
    let hi: usize = b.trim().parse().map_err(|_| format!("bad window end in {s:?}"))?;
    if hi <= lo {
        return Err(format!("empty window {s:?}"));
    }
    Ok((lo, hi))
}
