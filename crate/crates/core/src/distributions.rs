//! Continuous parametric laws used as chart generators and as data sources
//! for the simulation harnesses.
//!
//! All samplers use inverse-transform sampling on a [`UniformStream`], so a
//! stream is fully determined by `(family, parameters, seed)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use libm::erfc;
use serde::Serialize;
use statrs::function::beta::beta_reg;
use statrs::function::erf::erfc_inv;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::numerics::invert_increasing;
use crate::rng::UniformStream;
use crate::sample::Sample;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_677_939_946_059_934_381_87;

/// Parametric family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Uniform { low: f64, high: f64 },
    Normal { mean: f64, sd: f64 },
    Logistic { location: f64, scale: f64 },
    Cauchy { location: f64, scale: f64 },
    StudentT { dof: f64 },
    Pareto { scale: f64, shape: f64 },
    Exponential { rate: f64 },
}

/// A validated continuous distribution. Immutable and cheap to copy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distribution {
    family: Family,
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

impl Distribution {
    pub fn new(family: Family) -> Result<Self> {
        use Family::*;
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        match family {
            Uniform { low, high } => {
                require(finite(&[low, high]) && low < high, || {
                    format!("uniform requires a < b, got a={low}, b={high}")
                })?;
            }
            Normal { mean, sd } => {
                require(finite(&[mean, sd]) && sd > 0.0, || {
                    format!("normal requires sigma > 0, got sigma={sd}")
                })?;
            }
            Logistic { location, scale } => {
                require(finite(&[location, scale]) && scale > 0.0, || {
                    format!("logistic requires s > 0, got s={scale}")
                })?;
            }
            Cauchy { location, scale } => {
                require(finite(&[location, scale]) && scale > 0.0, || {
                    format!("cauchy requires gamma > 0, got gamma={scale}")
                })?;
            }
            StudentT { dof } => {
                require(dof.is_finite() && dof > 0.0, || {
                    format!("student-t requires nu > 0, got nu={dof}")
                })?;
            }
            Pareto { scale, shape } => {
                require(finite(&[scale, shape]) && scale > 0.0 && shape > 0.0, || {
                    format!("pareto requires x_m > 0 and alpha > 0, got x_m={scale}, alpha={shape}")
                })?;
            }
            Exponential { rate } => {
                require(rate.is_finite() && rate > 0.0, || {
                    format!("exponential requires lambda > 0, got lambda={rate}")
                })?;
            }
        }
        Ok(Self { family })
    }

    pub fn uniform(low: f64, high: f64) -> Result<Self> {
        Self::new(Family::Uniform { low, high })
    }

    pub fn normal(mean: f64, sd: f64) -> Result<Self> {
        Self::new(Family::Normal { mean, sd })
    }

    pub fn standard_normal() -> Self {
        Self {
            family: Family::Normal { mean: 0.0, sd: 1.0 },
        }
    }

    pub fn logistic(location: f64, scale: f64) -> Result<Self> {
        Self::new(Family::Logistic { location, scale })
    }

    pub fn cauchy(location: f64, scale: f64) -> Result<Self> {
        Self::new(Family::Cauchy { location, scale })
    }

    pub fn student_t(dof: f64) -> Result<Self> {
        Self::new(Family::StudentT { dof })
    }

    pub fn pareto(scale: f64, shape: f64) -> Result<Self> {
        Self::new(Family::Pareto { scale, shape })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Self::new(Family::Exponential { rate })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Interior of the support as an open interval `(lo, hi)`.
    pub fn support(&self) -> (f64, f64) {
        use Family::*;
        match self.family {
            Uniform { low, high } => (low, high),
            Pareto { scale, .. } => (scale, f64::INFINITY),
            Exponential { .. } => (0.0, f64::INFINITY),
            Normal { .. } | Logistic { .. } | Cauchy { .. } | StudentT { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// P(X <= x).
    pub fn cdf(&self, x: f64) -> f64 {
        use Family::*;
        match self.family {
            Uniform { low, high } => ((x - low) / (high - low)).clamp(0.0, 1.0),
            Normal { mean, sd } => 0.5 * erfc(-(x - mean) / sd * FRAC_1_SQRT_2),
            Logistic { location, scale } => 1.0 / (1.0 + (-(x - location) / scale).exp()),
            Cauchy { location, scale } => cauchy_cdf((x - location) / scale),
            StudentT { dof } => student_t_cdf(x, dof),
            Pareto { scale, shape } => {
                if x <= scale {
                    0.0
                } else {
                    -(shape * (scale / x).ln()).exp_m1()
                }
            }
            Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
        }
    }

    /// Survival function P(X > x), accurate in the upper tail.
    pub fn sf(&self, x: f64) -> f64 {
        use Family::*;
        match self.family {
            Normal { mean, sd } => 0.5 * erfc((x - mean) / sd * FRAC_1_SQRT_2),
            Logistic { location, scale } => 1.0 / (1.0 + ((x - location) / scale).exp()),
            Cauchy { location, scale } => cauchy_cdf(-(x - location) / scale),
            StudentT { dof } => student_t_cdf(-x, dof),
            Pareto { scale, shape } => {
                if x <= scale {
                    1.0
                } else {
                    (scale / x).powf(shape)
                }
            }
            Exponential { rate } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-rate * x).exp()
                }
            }
            Uniform { .. } => 1.0 - self.cdf(x),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        use Family::*;
        match self.family {
            Uniform { low, high } => {
                if x >= low && x <= high {
                    1.0 / (high - low)
                } else {
                    0.0
                }
            }
            Normal { mean, sd } => {
                let z = (x - mean) / sd;
                INV_SQRT_2PI / sd * (-0.5 * z * z).exp()
            }
            Logistic { location, scale } => {
                let e = (-((x - location) / scale).abs()).exp();
                e / (scale * (1.0 + e) * (1.0 + e))
            }
            Cauchy { location, scale } => {
                let z = (x - location) / scale;
                1.0 / (PI * scale * (1.0 + z * z))
            }
            StudentT { dof } => {
                let log_norm = ln_gamma(0.5 * (dof + 1.0)) - ln_gamma(0.5 * dof) - 0.5 * (dof * PI).ln();
                (log_norm - 0.5 * (dof + 1.0) * (x * x / dof).ln_1p()).exp()
            }
            Pareto { scale, shape } => {
                if x < scale {
                    0.0
                } else {
                    shape / x * (scale / x).powf(shape)
                }
            }
            Exponential { rate } => {
                if x < 0.0 {
                    0.0
                } else {
                    rate * (-rate * x).exp()
                }
            }
        }
    }

    /// Inverse cdf on the open interval (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::OutOfRange {
                what: "p",
                value: p,
                expected: "(0, 1)",
            });
        }
        Ok(self.quantile_unchecked(p))
    }

    /// Inverse cdf without the range check. `p` must lie in (0, 1).
    pub(crate) fn quantile_unchecked(&self, p: f64) -> f64 {
        use Family::*;
        match self.family {
            Uniform { low, high } => low + p * (high - low),
            Normal { mean, sd } => mean + sd * standard_normal_quantile(p),
            Logistic { location, scale } => location + scale * (p.ln() - (-p).ln_1p()),
            Cauchy { location, scale } => location + scale * cauchy_quantile(p),
            StudentT { dof } => student_t_quantile(p, dof),
            Pareto { scale, shape } => scale * (-(-p).ln_1p() / shape).exp(),
            Exponential { rate } => -(-p).ln_1p() / rate,
        }
    }

    pub fn median(&self) -> f64 {
        self.quantile_unchecked(0.5)
    }

    /// Infinite stream of inverse-transform draws seeded by `seed`.
    pub fn draws(&self, seed: u64) -> impl Iterator<Item = f64> + '_ {
        UniformStream::new(seed).map(move |u| self.quantile_unchecked(u))
    }

    /// `n` i.i.d. draws; identical `(seed, n)` gives bit-identical output.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Sample> {
        if n == 0 {
            return Err(Error::InsufficientData("sample size must be at least 1".into()));
        }
        Sample::new(self.draws(seed).take(n).collect())
    }
}

fn cauchy_cdf(z: f64) -> f64 {
    // Split to avoid cancellation of 1/2 + atan(z)/pi in the tails.
    if z < -1.0 {
        (-1.0 / z).atan() / PI
    } else if z > 1.0 {
        1.0 - (1.0 / z).atan() / PI
    } else {
        0.5 + z.atan() / PI
    }
}

fn cauchy_quantile(p: f64) -> f64 {
    if p < 0.5 {
        -1.0 / (PI * p).tan()
    } else if p > 0.5 {
        1.0 / (PI * (1.0 - p)).tan()
    } else {
        0.0
    }
}

fn standard_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

fn standard_normal_quantile(p: f64) -> f64 {
    if p > 0.5 {
        return -standard_normal_quantile(1.0 - p);
    }
    let mut z = -SQRT_2 * erfc_inv(2.0 * p);
    // Polish with Newton steps; Phi is relatively accurate in the lower tail.
    for _ in 0..2 {
        let density = INV_SQRT_2PI * (-0.5 * z * z).exp();
        if density <= 0.0 {
            break;
        }
        let step = (standard_normal_cdf(z) - p) / density;
        if !step.is_finite() {
            break;
        }
        z -= step;
    }
    z
}

fn student_t_cdf(t: f64, dof: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t.is_infinite() {
        return if t > 0.0 { 1.0 } else { 0.0 };
    }
    let t2 = t * t;
    if t2 < dof {
        let half = 0.5 * beta_reg(0.5, 0.5 * dof, t2 / (dof + t2));
        if t < 0.0 {
            0.5 - half
        } else {
            0.5 + half
        }
    } else {
        let tail = 0.5 * beta_reg(0.5 * dof, 0.5, dof / (dof + t2));
        if t < 0.0 {
            tail
        } else {
            1.0 - tail
        }
    }
}

fn student_t_quantile(p: f64, dof: f64) -> f64 {
    if dof == 1.0 {
        return cauchy_quantile(p);
    }
    if dof == 2.0 {
        return (2.0 * p - 1.0) / (2.0 * p * (1.0 - p)).sqrt();
    }
    if p > 0.5 {
        return -student_t_quantile(1.0 - p, dof);
    }
    if p == 0.5 {
        return 0.0;
    }
    let guess = standard_normal_quantile(p);
    invert_increasing(|t| student_t_cdf(t, dof), p, guess, f64::NEG_INFINITY, f64::INFINITY).unwrap_or(f64::NAN)
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        match self.family {
            Uniform { low, high } => write!(f, "uniform:{low},{high}"),
            Normal { mean, sd } => write!(f, "normal:{mean},{sd}"),
            Logistic { location, scale } => write!(f, "logistic:{location},{scale}"),
            Cauchy { location, scale } => write!(f, "cauchy:{location},{scale}"),
            StudentT { dof } => write!(f, "studentt:{dof}"),
            Pareto { scale, shape } => write!(f, "pareto:{scale},{shape}"),
            Exponential { rate } => write!(f, "exponential:{rate}"),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    /// Parses `family:p1,p2`, e.g. `normal:0,1` or `pareto:1,2.5`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), p.trim()),
            None => (s.trim(), ""),
        };
        let params: Vec<f64> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidParameter(format!("cannot parse parameter '{p}' in '{s}'")))
                })
                .collect::<Result<_>>()?
        };
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "'{name}' takes {k} parameter(s), got {} in '{s}'",
                    params.len()
                )))
            }
        };
        match name.to_ascii_lowercase().as_str() {
            "uniform" => {
                arity(2)?;
                Self::uniform(params[0], params[1])
            }
            "normal" | "gaussian" => {
                arity(2)?;
                Self::normal(params[0], params[1])
            }
            "logistic" => {
                arity(2)?;
                Self::logistic(params[0], params[1])
            }
            "cauchy" => {
                arity(2)?;
                Self::cauchy(params[0], params[1])
            }
            "studentt" | "student_t" | "t" => {
                arity(1)?;
                Self::student_t(params[0])
            }
            "pareto" => {
                arity(2)?;
                Self::pareto(params[0], params[1])
            }
            "exponential" | "exp" => {
                arity(1)?;
                Self::exponential(params[0])
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown distribution family '{other}'"
            ))),
        }
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // oracle values keep their printed digits
mod tests {
    use super::*;

    fn all_families() -> Vec<Distribution> {
        vec![
            Distribution::uniform(-1.0, 3.0).unwrap(),
            Distribution::normal(0.5, 2.0).unwrap(),
            Distribution::logistic(-1.0, 0.7).unwrap(),
            Distribution::cauchy(3.0, 1.5).unwrap(),
            Distribution::student_t(1.0).unwrap(),
            Distribution::student_t(2.0).unwrap(),
            Distribution::student_t(3.5).unwrap(),
            Distribution::student_t(30.0).unwrap(),
            Distribution::pareto(1.0, 2.5).unwrap(),
            Distribution::exponential(0.8).unwrap(),
        ]
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        assert!(Distribution::normal(0.0, -1.0).is_err());
        assert!(Distribution::normal(0.0, 0.0).is_err());
        assert!(Distribution::uniform(1.0, 1.0).is_err());
        assert!(Distribution::cauchy(0.0, 0.0).is_err());
        assert!(Distribution::student_t(0.0).is_err());
        assert!(Distribution::pareto(0.0, 1.0).is_err());
        assert!(Distribution::pareto(1.0, -2.0).is_err());
        assert!(Distribution::exponential(f64::NAN).is_err());
        assert!(Distribution::logistic(0.0, -0.1).is_err());
    }

    #[test]
    fn cdf_examples() {
        let n = Distribution::standard_normal();
        assert_eq!(n.cdf(0.0), 0.5);
        let c = Distribution::cauchy(0.0, 1.0).unwrap();
        assert!((c.cdf(1.0) - 0.75).abs() < 1e-15);
        // mpmath: ncdf(1.959964) at 30 digits
        assert!((n.cdf(1.959964) - 0.975_000_000_903_557_6).abs() < 1e-15);
        assert!((n.cdf(1.959964) - 0.975).abs() < 1e-8);
    }

    #[test]
    fn normal_cdf_relative_accuracy_in_tails() {
        // mpmath: ncdf(-10), ncdf(-5), ncdf(-1)
        let n = Distribution::standard_normal();
        let cases = [
            (-10.0, 7.619_853_024_160_526_7e-24),
            (-5.0, 2.866_515_718_791_939_1e-7),
            (-1.0, 0.158_655_253_931_457_05),
        ];
        for (x, want) in cases {
            let got = n.cdf(x);
            assert!(((got - want) / want).abs() < 1e-14, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn quantile_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        assert_eq!(u.quantile(0.5).unwrap(), 0.5);
        let c = Distribution::cauchy(0.0, 1.0).unwrap();
        assert!((c.quantile(0.75).unwrap() - 1.0).abs() < 1e-15);
        let p = Distribution::pareto(1.0, 2.0).unwrap();
        assert!((p.quantile(0.5).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn quantile_rejects_closed_endpoints() {
        let n = Distribution::standard_normal();
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(n.quantile(p), Err(Error::OutOfRange { .. })));
        }
    }

    #[test]
    fn quantile_round_trips_on_grid() {
        for d in all_families() {
            for i in 1..1000 {
                let p = i as f64 / 1000.0;
                let x = d.quantile(p).unwrap();
                let back = d.cdf(x);
                assert!((back - p).abs() <= 1e-12, "{d} p={p}: cdf(q)={back}");
            }
        }
    }

    #[test]
    fn cdf_quantile_round_trip_on_interior() {
        for d in all_families() {
            for i in 1..100 {
                let x = d.quantile(i as f64 / 100.0).unwrap();
                let back = d.quantile(d.cdf(x)).unwrap();
                assert!((back - x).abs() <= 1e-9 * x.abs().max(1.0), "{d} x={x}: {back}");
            }
        }
    }

    #[test]
    fn pdf_matches_finite_difference_of_cdf() {
        for d in all_families() {
            for i in 1..20 {
                let x = d.quantile(i as f64 / 20.0).unwrap();
                let h = 1e-5 * x.abs().max(1.0);
                let fd = (d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h);
                let pdf = d.pdf(x);
                assert!(((fd - pdf) / pdf).abs() < 1e-6, "{d} x={x}: fd={fd} pdf={pdf}");
            }
        }
    }

    #[test]
    fn sf_complements_cdf() {
        for d in all_families() {
            for i in 1..50 {
                let x = d.quantile(i as f64 / 50.0).unwrap();
                assert!((d.sf(x) + d.cdf(x) - 1.0).abs() < 1e-14, "{d}");
            }
        }
    }

    #[test]
    fn student_t_tails_match_closed_forms() {
        // t with 1 dof is Cauchy; with 2 dof, F(t) = 1/2 + t / (2 sqrt(2 + t^2)).
        let t1 = Distribution::student_t(1.0).unwrap();
        let c = Distribution::cauchy(0.0, 1.0).unwrap();
        let t2 = Distribution::student_t(2.0).unwrap();
        for x in [-50.0, -3.0, -0.2, 0.0, 0.7, 4.0, 100.0] {
            assert!((t1.cdf(x) - c.cdf(x)).abs() < 1e-14);
            let want = 0.5 + x / (2.0 * (2.0 + x * x).sqrt());
            assert!((t2.cdf(x) - want).abs() < 1e-14);
        }
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let a = u.sample(3, 7).unwrap();
        let b = u.sample(3, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.values().iter().all(|&x| x > 0.0 && x < 1.0));
        assert_ne!(a, u.sample(3, 8).unwrap());
        assert!(u.sample(0, 1).is_err());
    }

    #[test]
    fn normal_sample_mean_is_near_zero() {
        let n = 100_000;
        let s = Distribution::standard_normal().sample(n, 1).unwrap();
        let mean = s.values().iter().sum::<f64>() / n as f64;
        // 4 / sqrt(n) = 0.0126 < 0.02
        assert!(mean.abs() < 4.0 / (n as f64).sqrt(), "{mean}");
    }

    #[test]
    fn cauchy_sample_median_is_near_zero() {
        let s = Distribution::cauchy(0.0, 1.0).unwrap().sample(10_000, 1).unwrap();
        let mut v = s.into_inner();
        v.sort_by(f64::total_cmp);
        let median = 0.5 * (v[4999] + v[5000]);
        // Sample median sd ~ pi / (2 sqrt(n)) = 0.0157
        assert!(median.abs() < 0.05, "{median}");
    }

    #[test]
    fn parses_and_displays_specs() {
        let d: Distribution = "normal:0,1".parse().unwrap();
        assert_eq!(d, Distribution::standard_normal());
        let p: Distribution = "pareto:1,2.5".parse().unwrap();
        assert_eq!(p.to_string(), "pareto:1,2.5");
        assert_eq!(
            "t:3".parse::<Distribution>().unwrap(),
            Distribution::student_t(3.0).unwrap()
        );
        assert!("normal:0,-1".parse::<Distribution>().is_err());
        assert!("normal:0".parse::<Distribution>().is_err());
        assert!("weibull:1,2".parse::<Distribution>().is_err());
        assert!("normal:a,1".parse::<Distribution>().is_err());
    }
}
