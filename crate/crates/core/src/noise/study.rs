//! Seeded Monte Carlo studies over squeezing-error profiles: fidelity
//! statistics, log-log order fits, quartic coefficient and `l_x` sweeps.
//!
//! Sample `i` draws its profiles from seed `base_seed + i` (wrapping), the
//! x-profile on stream 0 and the y-profile on stream 1. Samples are evaluated
//! in parallel into pre-allocated slots, so results do not depend on the
//! worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loops::hadamard_dx;

use super::fidelity::{approx_fidelity, fidelity_report, quartic_coefficient, FidelityReport};
use super::profile::{Distribution, ErrorProfile};

/// Deficits below this are indistinguishable from double-precision noise.
pub const DEFICIT_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseFamily {
    Constant,
    Sinusoid,
    Uniform,
    Gaussian,
}

impl std::str::FromStr for NoiseFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(Self::Constant),
            "sinusoid" => Ok(Self::Sinusoid),
            "uniform" => Ok(Self::Uniform),
            "gaussian" => Ok(Self::Gaussian),
            other => Err(Error::Domain(format!(
                "unknown noise family '{other}' (expected constant, sinusoid, uniform or gaussian)"
            ))),
        }
    }
}

/// Recipe for drawing error profiles of magnitude `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub family: NoiseFamily,
    pub eps: f64,
    pub grid: usize,
    pub zero_mean: bool,
    /// Whole periods for the sinusoid family.
    pub periods: u32,
    /// Phase for the sinusoid family.
    pub phase: f64,
}

impl NoiseSpec {
    pub fn new(family: NoiseFamily, eps: f64) -> Self {
        Self { family, eps, grid: 4096, zero_mean: true, periods: 3, phase: 0.0 }
    }

    pub fn with_eps(self, eps: f64) -> Self {
        Self { eps, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.eps.is_finite() || self.eps < 0.0 {
            return Err(Error::Domain(format!("noise scale must be finite and non-negative, got {}", self.eps)));
        }
        if self.grid < 2 {
            return Err(Error::Grid(self.grid));
        }
        if self.family == NoiseFamily::Sinusoid && self.periods == 0 {
            return Err(Error::Domain("sinusoid noise needs at least one period".into()));
        }
        Ok(())
    }

    pub fn profile(&self, a: f64, b: f64, seed: u64, stream: u64) -> Result<ErrorProfile> {
        self.validate()?;
        let p = match self.family {
            NoiseFamily::Constant => ErrorProfile::constant(a, b, self.grid, self.eps)?,
            NoiseFamily::Sinusoid => ErrorProfile::sinusoid(a, b, self.grid, self.eps, self.periods, self.phase)?,
            NoiseFamily::Uniform => {
                ErrorProfile::random(a, b, self.grid, Distribution::Uniform, self.eps, seed, stream)?
            }
            NoiseFamily::Gaussian => {
                ErrorProfile::random(a, b, self.grid, Distribution::Gaussian, self.eps, seed, stream)?
            }
        };
        Ok(if self.zero_mean { p.with_zero_mean() } else { p })
    }
}

pub fn sample_seed(base_seed: u64, index: usize) -> u64 {
    base_seed.wrapping_add(index as u64)
}

/// Profiles and report for a single sample.
pub fn sample_report(l_x: f64, l_y: f64, noise: &NoiseSpec, seed: u64) -> Result<FidelityReport> {
    let px = noise.profile(0.0, l_x, seed, 0)?;
    let py = noise.profile(0.0, l_y, seed, 1)?;
    let mut report = fidelity_report(l_x, l_y, &px, &py)?;
    report.metadata.seed = Some(seed);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityStats {
    pub samples: usize,
    pub mean_f: f64,
    /// Population standard deviation of `f_exact_j0`.
    pub std_f: f64,
    pub min_f: f64,
    pub max_f: f64,
    /// Mean of the per-sample `1 − f_exact`.
    pub mean_deficit: f64,
    pub mean_delta_sigma_i: f64,
    pub mean_msq: f64,
}

impl FidelityStats {
    pub fn from_reports(reports: &[FidelityReport]) -> Self {
        let n = reports.len().max(1) as f64;
        let mean = |f: fn(&FidelityReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
        let mean_f = mean(|r| r.f_exact_j0);
        let var = reports.iter().map(|r| (r.f_exact_j0 - mean_f).powi(2)).sum::<f64>() / n;
        Self {
            samples: reports.len(),
            mean_f,
            std_f: var.sqrt(),
            min_f: reports.iter().map(|r| r.f_exact_j0).fold(f64::INFINITY, f64::min),
            max_f: reports.iter().map(|r| r.f_exact_j0).fold(f64::NEG_INFINITY, f64::max),
            mean_deficit: mean(|r| r.one_minus_f_exact),
            mean_delta_sigma_i: mean(|r| r.delta_sigma_i),
            mean_msq: mean(|r| r.mean_square_error),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloRun {
    pub reports: Vec<FidelityReport>,
    pub stats: FidelityStats,
}

pub fn monte_carlo_fidelity(
    l_x: f64,
    l_y: f64,
    noise: &NoiseSpec,
    samples: usize,
    base_seed: u64,
) -> Result<MonteCarloRun> {
    if samples == 0 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    noise.validate()?;
    let reports = (0..samples)
        .into_par_iter()
        .map(|i| sample_report(l_x, l_y, noise, sample_seed(base_seed, i)))
        .collect::<Result<Vec<_>>>()?;
    let stats = FidelityStats::from_reports(&reports);
    Ok(MonteCarloRun { reports, stats })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderPoint {
    pub eps: f64,
    pub mean_deficit: f64,
    pub mean_msq: f64,
    /// Whether the point entered the fit (deficit above the floor).
    pub used: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<OrderPoint>,
}

/// Unweighted least-squares line `y = slope·x + intercept`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Log-log slope of the mean fidelity deficit against the error magnitude.
pub fn order_scan(
    l_x: f64,
    l_y: f64,
    noise: &NoiseSpec,
    eps_values: &[f64],
    samples: usize,
    base_seed: u64,
) -> Result<OrderFit> {
    if eps_values.len() < 3 {
        return Err(Error::Domain(format!("order scan needs at least 3 error magnitudes, got {}", eps_values.len())));
    }
    if let Some(bad) = eps_values.iter().find(|e| !(**e > 0.0 && **e <= 0.2)) {
        return Err(Error::Domain(format!("error magnitudes must lie in (0, 0.2], got {bad}")));
    }
    let points = eps_values
        .iter()
        .map(|&eps| {
            let run = monte_carlo_fidelity(l_x, l_y, &noise.with_eps(eps), samples, base_seed)?;
            Ok(OrderPoint {
                eps,
                mean_deficit: run.stats.mean_deficit,
                mean_msq: run.stats.mean_msq,
                used: run.stats.mean_deficit >= DEFICIT_FLOOR,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        points.iter().filter(|p| p.used).map(|p| (p.eps.ln(), p.mean_deficit.ln())).unzip();
    if xs.len() < 2 {
        return Err(Error::Underflow);
    }
    let (slope, intercept) = fit_line(&xs, &ys);
    Ok(OrderFit { slope, intercept, points })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticEstimate {
    pub l_x: f64,
    /// Mean over samples of `(1 − f_exact) / ⟨δr²⟩²`.
    pub measured: f64,
    /// `[l_x √2 − π/(2√2)]²`.
    pub predicted: f64,
}

impl QuarticEstimate {
    pub fn relative_error(&self) -> f64 {
        (self.measured - self.predicted).abs() / self.predicted
    }
}

pub fn quartic_estimate(
    l_x: f64,
    l_y: f64,
    noise: &NoiseSpec,
    samples: usize,
    base_seed: u64,
) -> Result<QuarticEstimate> {
    let run = monte_carlo_fidelity(l_x, l_y, noise, samples, base_seed)?;
    let ratios: Vec<f64> = run
        .reports
        .iter()
        .filter(|r| r.mean_square_error > 0.0)
        .map(|r| r.one_minus_f_exact / r.mean_square_error.powi(2))
        .collect();
    if ratios.is_empty() {
        return Err(Error::Underflow);
    }
    Ok(QuarticEstimate {
        l_x,
        measured: ratios.iter().sum::<f64>() / ratios.len() as f64,
        predicted: quartic_coefficient(l_x),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Lin,
    Log,
}

/// `points` widths from `min` to `max` inclusive.
pub fn lx_grid(min: f64, max: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Domain(format!("an l_x sweep needs at least 2 points, got {points}")));
    }
    if !(min.is_finite() && max.is_finite()) || max <= min {
        return Err(Error::Domain(format!("empty l_x range [{min}, {max}]")));
    }
    hadamard_dx(min)?;
    let t = |k: usize| k as f64 / (points - 1) as f64;
    Ok((0..points)
        .map(|k| match (k, spacing) {
            (0, _) => min,
            (k, _) if k + 1 == points => max,
            (k, Spacing::Lin) => min + (max - min) * t(k),
            (k, Spacing::Log) => (min.ln() + (max.ln() - min.ln()) * t(k)).exp(),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub l_x: f64,
    pub d_x: f64,
    pub msq: f64,
    pub mean_one_minus_f_exact: f64,
    pub f_approx_cos: f64,
    pub f_approx_quartic: f64,
    pub is_local_max: bool,
}

/// Fidelity across loop widths. Each width reuses the same per-sample seeds;
/// random draws depend only on seed and grid, so every width sees the same
/// error samples stretched over its own interval.
pub fn scan_lx(lx_values: &[f64], l_y: f64, noise: &NoiseSpec, samples: usize, base_seed: u64) -> Result<Vec<ScanRow>> {
    if lx_values.is_empty() {
        return Err(Error::Domain("empty l_x sweep".into()));
    }
    let mut rows = lx_values
        .par_iter()
        .map(|&l_x| {
            let run = monte_carlo_fidelity(l_x, l_y, noise, samples, base_seed)?;
            let approx = approx_fidelity(l_x, run.stats.mean_msq)?;
            Ok(ScanRow {
                l_x,
                d_x: hadamard_dx(l_x)?,
                msq: run.stats.mean_msq,
                mean_one_minus_f_exact: run.stats.mean_deficit,
                f_approx_cos: approx.f_cos,
                f_approx_quartic: approx.f_quartic,
                is_local_max: false,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for k in 1..rows.len().saturating_sub(1) {
        let d = rows[k].mean_one_minus_f_exact;
        rows[k].is_local_max = d < rows[k - 1].mean_one_minus_f_exact && d < rows[k + 1].mean_one_minus_f_exact;
    }
    Ok(rows)
}
