//! Probability coordinate charts.
//!
//! A chart is a continuous, strictly monotone map from an open value
//! interval onto an open coordinate interval (normally `(0, 1)`), together
//! with its inverse and, where available, its derivative. Charts come from
//! parametric laws, from data (piecewise-linear through mid-rank plotting
//! positions with rational tails), or from transforming another chart.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::sample::Sample;

/// Open interval `(lo, hi)`; endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: 0.0, hi: 1.0 };

    pub fn new(a: f64, b: f64) -> Self {
        Self {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    /// Membership in the closure taken in the extended reals.
    pub fn contains_closure(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Grid on which user-supplied monotone maps are validated.
const CHECK_GRID: usize = 99;
const ROUND_TRIP_TOL: f64 = 1e-10;

/// A strictly monotone map of the coordinate interval with its inverse.
#[derive(Clone)]
pub struct MonotoneMap {
    label: String,
    forward: RealFn,
    inverse: RealFn,
    derivative: Option<RealFn>,
}

impl MonotoneMap {
    pub fn new<F, G>(label: impl Into<String>, forward: F, inverse: G) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
            derivative: None,
        }
    }

    pub fn with_derivative<D>(mut self, derivative: D) -> Self
    where
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn identity() -> Self {
        Self::new("id", |u| u, |u| u).with_derivative(|_| 1.0)
    }

    /// `u -> a u + b`.
    pub fn affine(a: f64, b: f64) -> Result<Self> {
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "affine map needs finite a != 0 and finite b, got a={a}, b={b}"
            )));
        }
        Ok(Self::new(format!("affine({a},{b})"), move |u| a * u + b, move |v| (v - b) / a).with_derivative(move |_| a))
    }

    /// `u -> u^k` for `k > 0`.
    pub fn power(k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParameter(format!("power needs k > 0, got {k}")));
        }
        Ok(
            Self::new(format!("pow({k})"), move |u| u.powf(k), move |v| v.powf(1.0 / k))
                .with_derivative(move |u| k * u.powf(k - 1.0)),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, u: f64) -> f64 {
        (self.forward)(u)
    }

    pub fn invert(&self, v: f64) -> f64 {
        (self.inverse)(v)
    }

    pub fn derivative(&self, u: f64) -> Option<f64> {
        self.derivative.as_ref().map(|d| d(u))
    }

    /// Strict monotonicity and inverse round trip on an interior grid of
    /// `(0, 1)`. Returns whether the map is increasing.
    fn check(&self) -> Result<bool> {
        let grid: Vec<f64> = (1..=CHECK_GRID).map(|i| i as f64 / (CHECK_GRID + 1) as f64).collect();
        let images: Vec<f64> = grid.iter().map(|&u| self.apply(u)).collect();
        let increasing = images[1] > images[0];
        for w in images.windows(2) {
            let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
            if !ok || !w[1].is_finite() {
                return Err(Error::NonInvertible(format!(
                    "map '{}' is not strictly monotone on (0,1)",
                    self.label
                )));
            }
        }
        for (&u, &v) in grid.iter().zip(&images) {
            let back = self.invert(v);
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !((back - u).abs() <= ROUND_TRIP_TOL) {
                return Err(Error::NonInvertible(format!(
                    "inverse of '{}' fails round trip at u={u}: got {back}",
                    self.label
                )));
            }
        }
        Ok(increasing)
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneMap").field("label", &self.label).finish()
    }
}

/// Chart built from data: piecewise linear through `(knots, levels)` with
/// rational tapers beyond the extreme knots.
///
/// Below the first knot the chart is `L0 * s / (s + (k0 - x))` and above the
/// last it is `1 - (1 - Lk) * s / (s + (x - kk))`, with `s = 1 / tail_slope`.
/// Both tails are continuous at the edge knot, have slope `tail_slope * L0`
/// (resp. `tail_slope * (1 - Lk)`) there, and never reach 0 or 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalChart {
    knots: Vec<f64>,
    levels: Vec<f64>,
    tail_slope: f64,
}

impl EmpiricalChart {
    /// Knots are the sorted distinct values; the level of a knot with
    /// multiplicity `m` and cumulative count `c` is the mid-rank position
    /// `(c - m/2) / n`.
    pub fn from_sample(sample: &Sample, tail_slope: f64) -> Result<Self> {
        if !(tail_slope > 0.0 && tail_slope.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tail slope must be positive, got {tail_slope}"
            )));
        }
        let mut sorted = sample.values().to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;

        let mut knots = Vec::new();
        let mut levels = Vec::new();
        let mut cumulative = 0usize;
        for run in sorted.chunk_by(|a, b| a == b) {
            cumulative += run.len();
            knots.push(run[0]);
            levels.push((cumulative as f64 - run.len() as f64 / 2.0) / n);
        }
        if knots.len() < 2 {
            return Err(Error::InsufficientData(
                "an empirical chart needs at least 2 distinct values".into(),
            ));
        }
        Ok(Self {
            knots,
            levels,
            tail_slope,
        })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn tail_slope(&self) -> f64 {
        self.tail_slope
    }

    fn scale(&self) -> f64 {
        1.0 / self.tail_slope
    }

    fn segment_slope(&self, i: usize) -> f64 {
        (self.levels[i + 1] - self.levels[i]) / (self.knots[i + 1] - self.knots[i])
    }

    pub fn forward(&self, x: f64) -> f64 {
        let k = self.knots.len() - 1;
        let s = self.scale();
        if x <= self.knots[0] {
            self.levels[0] * s / (s + (self.knots[0] - x))
        } else if x >= self.knots[k] {
            1.0 - (1.0 - self.levels[k]) * s / (s + (x - self.knots[k]))
        } else {
            let i = self.knots.partition_point(|&t| t <= x) - 1;
            let w = (x - self.knots[i]) / (self.knots[i + 1] - self.knots[i]);
            self.levels[i] + w * (self.levels[i + 1] - self.levels[i])
        }
    }

    pub fn inverse(&self, u: f64) -> f64 {
        let k = self.knots.len() - 1;
        let s = self.scale();
        if u <= self.levels[0] {
            self.knots[0] - s * (self.levels[0] / u - 1.0)
        } else if u >= self.levels[k] {
            self.knots[k] + s * ((1.0 - self.levels[k]) / (1.0 - u) - 1.0)
        } else {
            let i = self.levels.partition_point(|&l| l <= u) - 1;
            let w = (u - self.levels[i]) / (self.levels[i + 1] - self.levels[i]);
            self.knots[i] + w * (self.knots[i + 1] - self.knots[i])
        }
    }

    /// Piecewise-constant slope; at a knot, the mean of the one-sided slopes.
    pub fn derivative(&self, x: f64) -> f64 {
        let k = self.knots.len() - 1;
        let s = self.scale();
        let lower_tail = |x: f64| self.levels[0] * s / (s + self.knots[0] - x).powi(2);
        let upper_tail = |x: f64| (1.0 - self.levels[k]) * s / (s + x - self.knots[k]).powi(2);
        if x < self.knots[0] {
            return lower_tail(x);
        }
        if x > self.knots[k] {
            return upper_tail(x);
        }
        let i = self.knots.partition_point(|&t| t < x);
        if i <= k && self.knots[i] == x {
            let left = if i == 0 {
                lower_tail(x)
            } else {
                self.segment_slope(i - 1)
            };
            let right = if i == k { upper_tail(x) } else { self.segment_slope(i) };
            0.5 * (left + right)
        } else {
            self.segment_slope(i - 1)
        }
    }
}

/// Provenance of a chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartKind {
    Analytic,
    Empirical,
    /// Built by an affine transform or monotone composition. The coordinate
    /// range may differ from `(0, 1)`.
    Composed,
}

enum Repr {
    Analytic(Distribution),
    Empirical(EmpiricalChart),
    Affine {
        base: Chart,
        scale: f64,
        shift: f64,
    },
    Composed {
        base: Chart,
        map: MonotoneMap,
        increasing: bool,
    },
}

/// A probability coordinate chart. Immutable; clones share storage.
#[derive(Clone)]
pub struct Chart {
    repr: Arc<Repr>,
}

impl Chart {
    fn wrap(repr: Repr) -> Self {
        Self { repr: Arc::new(repr) }
    }

    /// The chart whose forward map is the cdf of `d`, restricted to the
    /// interior of the support.
    pub fn from_distribution(d: Distribution) -> Self {
        Self::wrap(Repr::Analytic(d))
    }

    /// Empirical chart through mid-rank plotting positions.
    pub fn from_sample(sample: &Sample, tail_slope: f64) -> Result<Self> {
        Ok(Self::wrap(Repr::Empirical(EmpiricalChart::from_sample(
            sample, tail_slope,
        )?)))
    }

    /// `a G + b`, with inverse `G^{-1}((u - b) / a)`.
    pub fn affine(&self, a: f64, b: f64) -> Result<Self> {
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "affine transform needs finite a != 0 and finite b, got a={a}, b={b}"
            )));
        }
        Ok(Self::wrap(Repr::Affine {
            base: self.clone(),
            scale: a,
            shift: b,
        }))
    }

    /// `T o G` with inverse `G^{-1} o T^{-1}`.
    pub fn compose(&self, map: MonotoneMap) -> Result<Self> {
        let increasing = map.check()?;
        Ok(Self::wrap(Repr::Composed {
            base: self.clone(),
            map,
            increasing,
        }))
    }

    pub fn kind(&self) -> ChartKind {
        match &*self.repr {
            Repr::Analytic(_) => ChartKind::Analytic,
            Repr::Empirical(_) => ChartKind::Empirical,
            Repr::Affine { .. } | Repr::Composed { .. } => ChartKind::Composed,
        }
    }

    /// The generating law, for analytic charts.
    pub fn distribution(&self) -> Option<&Distribution> {
        match &*self.repr {
            Repr::Analytic(d) => Some(d),
            _ => None,
        }
    }

    pub fn empirical(&self) -> Option<&EmpiricalChart> {
        match &*self.repr {
            Repr::Empirical(e) => Some(e),
            _ => None,
        }
    }

    /// Open value interval on which the chart is defined.
    pub fn domain(&self) -> Interval {
        match &*self.repr {
            Repr::Analytic(d) => {
                let (lo, hi) = d.support();
                Interval { lo, hi }
            }
            Repr::Empirical(_) => Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            },
            Repr::Affine { base, .. } | Repr::Composed { base, .. } => base.domain(),
        }
    }

    /// Open interval of coordinate values.
    pub fn range(&self) -> Interval {
        match &*self.repr {
            Repr::Analytic(_) | Repr::Empirical(_) => Interval::UNIT,
            Repr::Affine { base, scale, shift } => {
                let r = base.range();
                Interval::new(scale * r.lo + shift, scale * r.hi + shift)
            }
            Repr::Composed { base, map, .. } => {
                let r = base.range();
                Interval::new(map.apply(r.lo), map.apply(r.hi))
            }
        }
    }

    pub fn is_increasing(&self) -> bool {
        match &*self.repr {
            Repr::Analytic(_) | Repr::Empirical(_) => true,
            Repr::Affine { base, scale, .. } => base.is_increasing() == (*scale > 0.0),
            Repr::Composed { base, increasing, .. } => base.is_increasing() == *increasing,
        }
    }

    /// Evaluate `G(x)` without a domain check. Outside the domain this
    /// returns the limiting boundary value.
    pub fn forward(&self, x: f64) -> f64 {
        match &*self.repr {
            Repr::Analytic(d) => d.cdf(x),
            Repr::Empirical(e) => e.forward(x),
            Repr::Affine { base, scale, shift } => scale * base.forward(x) + shift,
            Repr::Composed { base, map, .. } => map.apply(base.forward(x)),
        }
    }

    /// `G(x)` for `x` in the open domain.
    pub fn coordinate(&self, x: f64) -> Result<f64> {
        if !self.domain().contains(x) {
            return Err(Error::DomainViolation {
                value: x,
                component: None,
            });
        }
        Ok(self.forward(x))
    }

    /// `G^{-1}(u)` for `u` in the open coordinate range.
    pub fn inverse(&self, u: f64) -> Result<f64> {
        if !self.range().contains(u) {
            return Err(Error::OutOfRange {
                what: "coordinate",
                value: u,
                expected: "the open range of the chart",
            });
        }
        match &*self.repr {
            Repr::Analytic(d) => d.quantile(u),
            Repr::Empirical(e) => Ok(e.inverse(u)),
            Repr::Affine { base, scale, shift } => base.inverse((u - shift) / scale),
            Repr::Composed { base, map, .. } => base.inverse(map.invert(u)),
        }
    }

    /// `G'(x)`, when the chart carries a derivative.
    pub fn derivative(&self, x: f64) -> Option<f64> {
        match &*self.repr {
            Repr::Analytic(d) => Some(d.pdf(x)),
            Repr::Empirical(e) => Some(e.derivative(x)),
            Repr::Affine { base, scale, .. } => base.derivative(x).map(|g| scale * g),
            Repr::Composed { base, map, .. } => {
                let g = base.derivative(x)?;
                map.derivative(base.forward(x)).map(|t| t * g)
            }
        }
    }

    /// Whether the derivative is exact (as opposed to an averaged slope of a
    /// piecewise-linear chart).
    pub fn has_smooth_derivative(&self) -> bool {
        match &*self.repr {
            Repr::Analytic(_) => true,
            Repr::Empirical(_) => false,
            Repr::Affine { base, .. } | Repr::Composed { base, .. } => base.has_smooth_derivative(),
        }
    }

    /// `|G(x) - G(y)|`. Endpoints of the domain (including infinite ones)
    /// are accepted as limits.
    pub fn distance(&self, x: f64, y: f64) -> Result<f64> {
        let dom = self.domain();
        for v in [x, y] {
            if !dom.contains_closure(v) {
                return Err(Error::DomainViolation {
                    value: v,
                    component: None,
                });
            }
        }
        Ok((self.forward(x) - self.forward(y)).abs())
    }

    /// Short human-readable description, e.g. `normal:0,1`.
    pub fn describe(&self) -> String {
        match &*self.repr {
            Repr::Analytic(d) => d.to_string(),
            Repr::Empirical(e) => format!("empirical({} knots)", e.knots.len()),
            Repr::Affine { base, scale, shift } => {
                format!("affine({scale},{shift})[{}]", base.describe())
            }
            Repr::Composed { base, map, .. } => format!("{}[{}]", map.label(), base.describe()),
        }
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chart")
            .field("kind", &self.kind())
            .field("describe", &self.describe())
            .finish()
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

pub fn chart_from_distribution(d: Distribution) -> Chart {
    Chart::from_distribution(d)
}

pub fn chart_from_sample(sample: &Sample, tail_slope: f64) -> Result<Chart> {
    Chart::from_sample(sample, tail_slope)
}

pub fn affine_transform(chart: &Chart, a: f64, b: f64) -> Result<Chart> {
    chart.affine(a, b)
}

pub fn compose_monotone(chart: &Chart, map: MonotoneMap) -> Result<Chart> {
    chart.compose(map)
}

pub fn induced_distance(chart: &Chart, x: f64, y: f64) -> Result<f64> {
    chart.distance(x, y)
}

/// Tail slope used when an empirical chart is built without an explicit
/// one: the reciprocal of the data range.
pub fn default_tail_slope(sample: &Sample) -> f64 {
    let spread = sample.max() - sample.min();
    if spread > 0.0 {
        1.0 / spread
    } else {
        1.0
    }
}

/// A chart as named on the command line: a distribution spec, or
/// `empirical` to build the chart from the data being analysed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartSpec {
    Analytic(Distribution),
    Empirical,
}

impl ChartSpec {
    /// Materialize the chart. `data` is required for `Empirical`.
    pub fn build(&self, data: Option<&Sample>) -> Result<Chart> {
        match self {
            ChartSpec::Analytic(d) => Ok(Chart::from_distribution(*d)),
            ChartSpec::Empirical => {
                let data = data.ok_or_else(|| Error::InsufficientData("an empirical chart needs input data".into()))?;
                Chart::from_sample(data, default_tail_slope(data))
            }
        }
    }
}

impl FromStr for ChartSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("empirical") {
            Ok(ChartSpec::Empirical)
        } else {
            Ok(ChartSpec::Analytic(s.parse()?))
        }
    }
}

impl fmt::Display for ChartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartSpec::Analytic(d) => d.fmt(f),
            ChartSpec::Empirical => f.write_str("empirical"),
        }
    }
}
