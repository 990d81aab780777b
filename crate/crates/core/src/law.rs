//! Expectations of functions of the coordinate variable `U = G(X)`, either
//! under the empirical law of a sample or under a parametric law.

use crate::charts::Chart;
use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::numerics::{compensated_sum, integrate, QuadratureSpec};
use crate::sample::Sample;

/// Source of the random variable `X`.
#[derive(Debug, Clone, Copy)]
pub enum Law<'a> {
    Sample(&'a Sample),
    Distribution {
        dist: &'a Distribution,
        quadrature: QuadratureSpec,
    },
}

/// An expectation together with the number of points it was built from:
/// the sample size, or the number of quadrature nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectation {
    pub value: f64,
    pub points: usize,
}

impl<'a> Law<'a> {
    pub fn sample(s: &'a Sample) -> Self {
        Law::Sample(s)
    }

    pub fn distribution(d: &'a Distribution) -> Self {
        Law::Distribution {
            dist: d,
            quadrature: QuadratureSpec::default(),
        }
    }

    pub fn with_quadrature(d: &'a Distribution, quadrature: QuadratureSpec) -> Self {
        Law::Distribution { dist: d, quadrature }
    }

    /// Coordinates `G(x_i)` of a sample, checked against the chart domain.
    pub(crate) fn sample_coordinates(s: &Sample, chart: &Chart) -> Result<Vec<f64>> {
        s.values().iter().map(|&x| chart.coordinate(x)).collect()
    }

    fn check_support(d: &Distribution, chart: &Chart) -> Result<()> {
        let (lo, hi) = d.support();
        let dom = chart.domain();
        if lo < dom.lo {
            return Err(Error::DomainViolation {
                value: lo,
                component: None,
            });
        }
        if hi > dom.hi {
            return Err(Error::DomainViolation {
                value: hi,
                component: None,
            });
        }
        Ok(())
    }

    /// `E[h(G(X))]`.
    ///
    /// For a parametric law the expectation is integrated in the probability
    /// variable, `int_0^1 h(G(Q(p))) dp`, which keeps the integrand bounded
    /// whenever `h` is bounded on the chart range.
    pub fn expect<H>(&self, chart: &Chart, h: H) -> Result<Expectation>
    where
        H: Fn(f64) -> f64,
    {
        match *self {
            Law::Sample(s) => {
                let coords = Self::sample_coordinates(s, chart)?;
                let total = compensated_sum(coords.iter().map(|&u| h(u)));
                Ok(Expectation {
                    value: total / coords.len() as f64,
                    points: coords.len(),
                })
            }
            Law::Distribution { dist, quadrature } => {
                Self::check_support(dist, chart)?;
                let integral = integrate(|p| h(chart.forward(dist.quantile_unchecked(p))), 0.0, 1.0, &quadrature)?;
                Ok(Expectation {
                    value: integral.value,
                    points: integral.evaluations,
                })
            }
        }
    }
}

impl<'a> From<&'a Sample> for Law<'a> {
    fn from(s: &'a Sample) -> Self {
        Law::sample(s)
    }
}

impl<'a> From<&'a Distribution> for Law<'a> {
    fn from(d: &'a Distribution) -> Self {
        Law::distribution(d)
    }
}
