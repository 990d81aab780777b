//! Probability barycenters: average in coordinates, pull back through the
//! inverse chart.

use serde::Serialize;

use crate::charts::Chart;
use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::law::Law;
use crate::numerics::{compensated_mean, QuadratureSpec};
use crate::sample::Sample;

/// Coordinate means closer than this (relative to the range width) to the
/// edge of the chart range are rejected.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Coordinate means closer than this to the edge are accepted but flagged.
pub const BOUNDARY_FLAG_TOL: f64 = 1e-9;

pub const NEAR_BOUNDARY_WARNING: &str = "near_boundary";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarycenterReport {
    pub coordinate_mean: f64,
    pub barycenter: f64,
    /// Sample size, or number of quadrature nodes.
    pub n: usize,
    pub boundary_flag: bool,
    pub chart: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<&'static str>,
}

/// Pull a coordinate mean back through the chart. Returns the barycenter
/// and whether the mean sits within `BOUNDARY_FLAG_TOL` of the range edge.
pub(crate) fn pull_back(chart: &Chart, coordinate_mean: f64, component: Option<usize>) -> Result<(f64, bool)> {
    let range = chart.range();
    let width = if range.width().is_finite() { range.width() } else { 1.0 };
    let gap = (coordinate_mean - range.lo).min(range.hi - coordinate_mean) / width;
    // Written so that a NaN mean is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(gap > BOUNDARY_TOL) {
        return Err(Error::BoundaryValue {
            coordinate_mean,
            component,
        });
    }
    let barycenter = chart.inverse(coordinate_mean).map_err(|_| Error::BoundaryValue {
        coordinate_mean,
        component,
    })?;
    Ok((barycenter, gap <= BOUNDARY_FLAG_TOL))
}

fn report(chart: &Chart, coordinate_mean: f64, n: usize) -> Result<BarycenterReport> {
    let (barycenter, boundary_flag) = pull_back(chart, coordinate_mean, None)?;
    Ok(BarycenterReport {
        coordinate_mean,
        barycenter,
        n,
        boundary_flag,
        chart: chart.describe(),
        warning: boundary_flag.then_some(NEAR_BOUNDARY_WARNING),
    })
}

/// `G^{-1}(mean of G(x_i))`.
pub fn barycenter_of_sample(sample: &Sample, chart: &Chart) -> Result<BarycenterReport> {
    let coords = Law::sample_coordinates(sample, chart)?;
    report(chart, compensated_mean(&coords), coords.len())
}

/// `G^{-1}(E[G(X)])` with the expectation integrated over the quantile
/// variable of `dist`.
pub fn barycenter_of_distribution(
    dist: &Distribution,
    chart: &Chart,
    quadrature: &QuadratureSpec,
) -> Result<BarycenterReport> {
    let e = Law::with_quadrature(dist, *quadrature).expect(chart, |u| u)?;
    report(chart, e.value, e.points)
}

/// Whether two samples have coordinate means within `tol` of each other.
pub fn kolmogorov_equivalent(a: &Sample, b: &Sample, chart: &Chart, tol: f64) -> Result<bool> {
    let ma = compensated_mean(&Law::sample_coordinates(a, chart)?);
    let mb = compensated_mean(&Law::sample_coordinates(b, chart)?);
    Ok((ma - mb).abs() <= tol)
}

/// Evenly spaced candidate locations `lo, lo + step, ..., <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidParameter(format!(
                "grid needs finite lo <= hi and step > 0, got [{lo}, {hi}] step {step}"
            )));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=count).map(move |i| self.lo + i as f64 * self.step)
    }
}

/// Brute-force minimizer over `grid` of the mean squared induced distance
/// `mean_i (G(x_i) - G(c))^2`.
///
/// This evaluates the variational characterization directly and shares no
/// code path with [`barycenter_of_sample`], which makes it a usable oracle.
pub fn argmin_characterization_check(sample: &Sample, chart: &Chart, grid: &GridSpec) -> Result<f64> {
    let n = sample.len() as f64;
    let mut best = (f64::INFINITY, f64::NAN);
    for c in grid.points() {
        if !chart.domain().contains(c) {
            continue;
        }
        let mut objective = 0.0;
        for &x in sample.values() {
            let d = chart.distance(x, c)?;
            objective += d * d;
        }
        objective /= n;
        if objective < best.0 {
            best = (objective, c);
        }
    }
    if best.1.is_nan() {
        return Err(Error::InvalidParameter(
            "grid has no point inside the chart domain".into(),
        ));
    }
    Ok(best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::MonotoneMap;

    fn sample(v: &[f64]) -> Sample {
        Sample::try_from(v).unwrap()
    }

    fn gaussian() -> Chart {
        Chart::from_distribution(Distribution::standard_normal())
    }

    fn logistic() -> Chart {
        Chart::from_distribution(Distribution::logistic(0.0, 1.0).unwrap())
    }

    // mpmath, 40 digits: logit of the mean of logistic(1), logistic(2), logistic(3)
    const LOGISTIC_123: f64 = 1.772_835_410_862_838_8;

    #[test]
    fn sample_barycenter_examples() {
        let r = barycenter_of_sample(&sample(&[-1.0, 1.0]), &gaussian()).unwrap();
        assert!(r.barycenter.abs() < 1e-15);
        assert!((r.coordinate_mean - 0.5).abs() < 1e-16);
        assert_eq!(r.n, 2);
        assert!(!r.boundary_flag);

        let r = barycenter_of_sample(&sample(&[1.0, 2.0, 3.0]), &logistic()).unwrap();
        assert!((r.coordinate_mean - 0.854_809_927_810_106_8).abs() < 1e-15);
        assert!((r.barycenter - LOGISTIC_123).abs() < 1e-12);

        for m in [-3.3, 0.0, 2.5] {
            let r = barycenter_of_sample(&sample(&[m]), &logistic()).unwrap();
            assert!((r.barycenter - m).abs() < 1e-12);
        }
    }

    #[test]
    fn sample_outside_domain_is_rejected() {
        let pareto = Chart::from_distribution(Distribution::pareto(1.0, 2.0).unwrap());
        assert!(matches!(
            barycenter_of_sample(&sample(&[2.0, 0.5]), &pareto),
            Err(Error::DomainViolation { value, .. }) if value == 0.5
        ));
    }

    #[test]
    fn boundary_mean_is_an_error() {
        // Phi(40) rounds to 1.
        let err = barycenter_of_sample(&sample(&[40.0, 41.0]), &gaussian()).unwrap_err();
        assert!(matches!(err, Error::BoundaryValue { .. }));
    }

    #[test]
    fn near_boundary_mean_is_flagged() {
        // Phi(-6.5) ~ 4e-11: inside (1e-12, 1e-9)
        let r = barycenter_of_sample(&sample(&[-6.5]), &gaussian()).unwrap();
        assert!(r.boundary_flag);
        assert_eq!(r.warning, Some(NEAR_BOUNDARY_WARNING));
        assert!((r.barycenter + 6.5).abs() < 1e-9);
    }

    #[test]
    fn distribution_barycenter_examples() {
        let q = QuadratureSpec::default();
        let d = Distribution::normal(5.0, 2.0).unwrap();
        let r = barycenter_of_distribution(&d, &Chart::from_distribution(d), &q).unwrap();
        assert!((r.barycenter - 5.0).abs() < 1e-9);

        let c = Distribution::cauchy(0.0, 1.0).unwrap();
        let r = barycenter_of_distribution(&c, &gaussian(), &q).unwrap();
        assert!(r.barycenter.abs() < 1e-9, "{}", r.barycenter);

        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let r = barycenter_of_distribution(&u, &Chart::from_distribution(u), &q).unwrap();
        assert!((r.barycenter - 0.5).abs() < 1e-12);
        assert!(r.n >= 15);
    }

    #[test]
    fn distribution_outside_chart_domain_is_rejected() {
        let u = Chart::from_distribution(Distribution::uniform(0.0, 1.0).unwrap());
        let n = Distribution::standard_normal();
        assert!(matches!(
            barycenter_of_distribution(&n, &u, &QuadratureSpec::default()),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn kolmogorov_equivalence_examples() {
        let g = gaussian();
        assert!(kolmogorov_equivalent(&sample(&[-1.0, 1.0]), &sample(&[-2.0, 2.0]), &g, 1e-12).unwrap());
        assert!(!kolmogorov_equivalent(&sample(&[0.0]), &sample(&[1.0]), &g, 1e-12).unwrap());
        let s = sample(&[1.0, 2.0, 3.0]);
        assert!(kolmogorov_equivalent(&s, &s, &logistic(), 0.0).unwrap());
    }

    #[test]
    fn equivalent_samples_share_a_barycenter() {
        let g = gaussian();
        let a = sample(&[-1.0, 1.0]);
        let b = sample(&[-2.0, 2.0]);
        let ba = barycenter_of_sample(&a, &g).unwrap().barycenter;
        let bb = barycenter_of_sample(&b, &g).unwrap().barycenter;
        assert!((ba - bb).abs() < 1e-12);
    }

    #[test]
    fn argmin_examples() {
        let grid = GridSpec::new(-2.0, 2.0, 1e-3).unwrap();
        let m = argmin_characterization_check(&sample(&[-1.0, 1.0]), &gaussian(), &grid).unwrap();
        assert!(m.abs() <= 1e-3);

        let grid = GridSpec::new(0.0, 4.0, 1e-4).unwrap();
        let m = argmin_characterization_check(&sample(&[1.0, 2.0, 3.0]), &logistic(), &grid).unwrap();
        assert!((m - LOGISTIC_123).abs() <= 1e-4, "{m}");

        let grid = GridSpec::new(0.0, 4.0, 1e-2).unwrap();
        let m = argmin_characterization_check(&sample(&[2.345]), &logistic(), &grid).unwrap();
        assert!((m - 2.345).abs() <= 1e-2);
    }

    #[test]
    fn orientation_and_affine_invariance() {
        let s = sample(&[0.3, -1.2, 2.2, 0.9]);
        let g = logistic();
        let base = barycenter_of_sample(&s, &g).unwrap().barycenter;
        for (a, b) in [(-1.0, 1.0), (2.0, 0.0), (0.5, -3.0), (-7.0, 2.0)] {
            let t = barycenter_of_sample(&s, &g.affine(a, b).unwrap()).unwrap().barycenter;
            assert!((t - base).abs() < 1e-10, "a={a} b={b}: {t} vs {base}");
        }
        let third = g.compose(MonotoneMap::affine(1.0 / 3.0, 1.0 / 3.0).unwrap()).unwrap();
        let t = barycenter_of_sample(&s, &third).unwrap().barycenter;
        assert!((t - base).abs() < 1e-10);
    }

    #[test]
    fn rigidity_counterexample() {
        // mean of Phi(-1)^2 and Phi(1)^2 is 0.36651..., sqrt -> 0.60540584;
        // Phi^{-1} of that is 0.26736478 (mpmath).
        let g = gaussian();
        let s = sample(&[-1.0, 1.0]);
        let squared = g.compose(MonotoneMap::power(2.0).unwrap()).unwrap();
        let r = barycenter_of_sample(&s, &squared).unwrap();
        assert!(
            (r.barycenter - 0.267_364_782_177_569_1).abs() < 1e-12,
            "{}",
            r.barycenter
        );
        let plain = barycenter_of_sample(&s, &g).unwrap().barycenter;
        assert!((r.barycenter - plain).abs() > 1e-3);
    }
}
