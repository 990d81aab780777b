//! Asymptotics of empirical barycenters: delta-method standard errors,
//! intrinsic CLT constants, and Monte Carlo harnesses for the law of large
//! numbers and the central limit theorem in probability coordinates.
//!
//! The Monte Carlo harnesses draw replicate `r` from the stream seeded with
//! [`sub_seed`]`(seed, r)` and collect results by replicate index, so a
//! report is bit-identical for any thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::barycenter::{barycenter_of_distribution, pull_back};
use crate::charts::Chart;
use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::law::Law;
use crate::moments::centred_moment;
use crate::numerics::{compensated_mean, CompensatedSum, QuadratureSpec};
use crate::rng::{sub_seed, UniformStream};
use crate::sample::Sample;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub n: usize,
    pub barycenter: f64,
    /// Plug-in variance of the coordinates, `(1/n) sum (G(x_i) - mean)^2`.
    pub coordinate_variance: f64,
    /// `|G'(b)|` at the plug-in barycenter.
    pub chart_derivative_at_b: f64,
    pub asymptotic_variance: f64,
    pub stderr: f64,
    /// False when the derivative is an averaged one-sided slope of a
    /// piecewise-linear chart.
    pub smooth_derivative: bool,
}

/// Delta-method standard error of the empirical barycenter.
pub fn delta_method_stderr(sample: &Sample, chart: &Chart) -> Result<AsymptoticReport> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::InsufficientData(
            "delta-method standard error needs at least 2 observations".into(),
        ));
    }
    let coords = Law::sample_coordinates(sample, chart)?;
    if coords.iter().all(|&u| u == coords[0]) {
        return Err(Error::DegenerateSample);
    }
    let mean = compensated_mean(&coords);
    let variance = compensated_mean(&coords.iter().map(|u| (u - mean) * (u - mean)).collect::<Vec<_>>());
    if variance == 0.0 {
        return Err(Error::DegenerateSample);
    }
    let (barycenter, _) = pull_back(chart, mean, None)?;
    let slope = chart
        .derivative(barycenter)
        .map(f64::abs)
        .filter(|g| *g > 0.0 && g.is_finite())
        .ok_or(Error::DerivativeUnavailable(barycenter))?;
    let asymptotic_variance = variance / (slope * slope);
    Ok(AsymptoticReport {
        n,
        barycenter,
        coordinate_variance: variance,
        chart_derivative_at_b: slope,
        asymptotic_variance,
        stderr: (asymptotic_variance / n as f64).sqrt(),
        smooth_derivative: chart.has_smooth_derivative(),
    })
}

fn density_at_median(d: &Distribution) -> Result<f64> {
    let f = d.pdf(d.median());
    if !(f > 0.0 && f.is_finite()) {
        return Err(Error::InvalidParameter(format!("density at the median of {d} is {f}")));
    }
    Ok(f)
}

/// `1 / (12 f(m)^2)`: limiting variance of `sqrt(n) (b_hat - m)` under the
/// law's own chart.
pub fn intrinsic_clt_variance(d: &Distribution) -> Result<f64> {
    let f = density_at_median(d)?;
    Ok(1.0 / (12.0 * (f * f)))
}

/// `1 / (4 f(m)^2)`: limiting variance of the classical sample median.
pub fn median_clt_variance(d: &Distribution) -> Result<f64> {
    let f = density_at_median(d)?;
    Ok(1.0 / (4.0 * (f * f)))
}

/// Exact (quadrature) barycenter and delta-method variance of a law under
/// a chart: `b = G^{-1}(E G(X))` and `Var(G(X)) / G'(b)^2`.
pub fn delta_method_target(d: &Distribution, chart: &Chart, quadrature: &QuadratureSpec) -> Result<(f64, f64)> {
    let truth = barycenter_of_distribution(d, chart, quadrature)?.barycenter;
    let var = centred_moment(Law::with_quadrature(d, *quadrature), chart, 2)?.raw_coordinate_moment;
    let slope = chart
        .derivative(truth)
        .filter(|g| *g != 0.0 && g.is_finite())
        .ok_or(Error::DerivativeUnavailable(truth))?;
    Ok((truth, var / (slope * slope)))
}

/// One sample path observed at increasing sample sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LlnReport {
    pub seed: u64,
    pub dist: String,
    pub chart: String,
    pub n_grid: Vec<usize>,
    /// Empirical barycenter after `n_grid[i]` draws.
    pub estimates: Vec<f64>,
    /// Classical sample mean of the same draws.
    pub running_means: Vec<f64>,
    /// Quadrature barycenter of the law.
    pub truth: f64,
}

impl LlnReport {
    /// `max |b_hat_n - truth|` over checkpoints with `n >= from`.
    pub fn max_error_from(&self, from: usize) -> f64 {
        self.n_grid
            .iter()
            .zip(&self.estimates)
            .filter(|(n, _)| **n >= from)
            .map(|(_, b)| (b - self.truth).abs())
            .fold(0.0, f64::max)
    }
}

pub fn run_lln_experiment(d: &Distribution, chart: &Chart, n_grid: &[usize], seed: u64) -> Result<LlnReport> {
    if n_grid.is_empty() || n_grid[0] == 0 || n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "n_grid must be non-empty, positive and strictly increasing".into(),
        ));
    }
    let truth = barycenter_of_distribution(d, chart, &QuadratureSpec::default())?.barycenter;
    let mut draws = d.draws(seed);
    let mut coords = CompensatedSum::new();
    let mut values = CompensatedSum::new();
    let mut drawn = 0usize;
    let mut estimates = Vec::with_capacity(n_grid.len());
    let mut running_means = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        while drawn < n {
            let x = draws.next().expect("stream is infinite");
            coords.add(chart.coordinate(x)?);
            values.add(x);
            drawn += 1;
        }
        let (b, _) = pull_back(chart, coords.value() / n as f64, None)?;
        estimates.push(b);
        running_means.push(values.value() / n as f64);
    }
    Ok(LlnReport {
        seed,
        dist: d.to_string(),
        chart: chart.describe(),
        n_grid: n_grid.to_vec(),
        estimates,
        running_means,
        truth,
    })
}

/// Replicated fluctuation experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub seed: u64,
    pub dist: String,
    pub chart: String,
    pub n: usize,
    pub reps: usize,
    pub truth: f64,
    pub estimates: Vec<f64>,
    /// `sqrt(n) (b_hat_r - truth)` per replicate.
    pub scaled_errors: Vec<f64>,
    /// Sample variance (denominator `reps - 1`) of the scaled errors;
    /// `None` when `reps == 1`.
    pub empirical_variance: Option<f64>,
    pub target_variance: f64,
}

impl SimulationReport {
    /// Kolmogorov–Smirnov distance between the scaled errors, standardized
    /// by the target variance, and N(0, 1).
    pub fn normality_ks(&self) -> f64 {
        let sd = self.target_variance.sqrt();
        let z: Vec<f64> = self.scaled_errors.iter().map(|e| e / sd).collect();
        ks_statistic(&z, standard_normal_cdf)
    }
}

fn standard_normal_cdf(x: f64) -> f64 {
    Distribution::standard_normal().cdf(x)
}

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n - F|`.
pub fn ks_statistic<F: Fn(f64) -> f64>(values: &[f64], cdf: F) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (((i + 1) as f64 / n) - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic critical value of `sqrt(n) D_n` at level `alpha`, from
/// `P(K > x) ~ 2 exp(-2 x^2)`.
pub fn ks_critical_value(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

fn replicate_barycenter(d: &Distribution, chart: &Chart, n: usize, seed: u64) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for u in UniformStream::new(seed).take(n) {
        acc.add(chart.coordinate(d.quantile_unchecked(u))?);
    }
    Ok(pull_back(chart, acc.value() / n as f64, None)?.0)
}

pub fn run_clt_experiment(
    d: &Distribution,
    chart: &Chart,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<SimulationReport> {
    if n == 0 || reps == 0 {
        return Err(Error::InvalidParameter("n and reps must be at least 1".into()));
    }
    let (truth, target_variance) = delta_method_target(d, chart, &QuadratureSpec::default())?;
    let estimates = (0..reps as u64)
        .into_par_iter()
        .map(|r| replicate_barycenter(d, chart, n, sub_seed(seed, r)))
        .collect::<Result<Vec<f64>>>()?;
    let root_n = (n as f64).sqrt();
    let scaled_errors: Vec<f64> = estimates.iter().map(|b| root_n * (b - truth)).collect();
    let empirical_variance = (reps > 1).then(|| {
        let mean = compensated_mean(&scaled_errors);
        let ss: CompensatedSum = scaled_errors.iter().map(|e| (e - mean) * (e - mean)).collect();
        ss.value() / (reps - 1) as f64
    });
    Ok(SimulationReport {
        seed,
        dist: d.to_string(),
        chart: chart.describe(),
        n,
        reps,
        truth,
        estimates,
        scaled_errors,
        empirical_variance,
        target_variance,
    })
}
