//! Numerical building blocks: compensated summation, bracketed inversion of
//! monotone functions and adaptive Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
///
/// The result does not depend on how the caller chunks the input, only on
/// the order of the values.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// Compensated arithmetic mean. Returns `NaN` for an empty input.
pub fn compensated_mean(values: &[f64]) -> f64 {
    compensated_sum(values.iter().copied()) / values.len() as f64
}

/// Width at which bracketed inversion stops.
pub const BISECTION_WIDTH: f64 = 1e-13;

/// Solve `f(x) = target` for a non-decreasing `f` on `(lo, hi)`.
///
/// The bracket starts at `[guess - 1, guess + 1]` and is expanded
/// geometrically (clipped to the open domain) until it straddles the
/// target, then bisected until its width drops below
/// `BISECTION_WIDTH * max(1, |x|)` or no representable midpoint remains.
pub fn invert_increasing<F>(f: F, target: f64, guess: f64, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut a = guess - 1.0;
    let mut b = guess + 1.0;
    if lo.is_finite() && a <= lo {
        a = lo + 0.5 * (guess - lo).max(f64::MIN_POSITIVE);
    }
    if hi.is_finite() && b >= hi {
        b = hi - 0.5 * (hi - guess).max(f64::MIN_POSITIVE);
    }

    let mut step = 1.0;
    let mut expansions = 0;
    while f(a) > target {
        expansions += 1;
        if expansions > 2100 {
            return Err(Error::NonInvertible(format!(
                "could not bracket level {target} from below"
            )));
        }
        let next = if lo.is_finite() {
            lo + 0.5 * (a - lo)
        } else {
            step *= 2.0;
            a - step
        };
        if next == a || next.is_infinite() {
            return Ok(a);
        }
        a = next;
    }
    step = 1.0;
    expansions = 0;
    while f(b) < target {
        expansions += 1;
        if expansions > 2100 {
            return Err(Error::NonInvertible(format!(
                "could not bracket level {target} from above"
            )));
        }
        let next = if hi.is_finite() {
            hi - 0.5 * (hi - b)
        } else {
            step *= 2.0;
            b + step
        };
        if next == b || next.is_infinite() {
            return Ok(b);
        }
        b = next;
    }

    loop {
        let mid = 0.5 * (a + b);
        if b - a <= BISECTION_WIDTH * mid.abs().max(1.0) || mid <= a || mid >= b {
            return Ok(mid);
        }
        if f(mid) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
}

/// Settings for adaptive quadrature on a finite interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Target bound on the absolute error of the integral.
    pub abs_tol: f64,
    /// Maximum number of subintervals before giving up.
    pub max_intervals: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_intervals: 4000,
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_bound: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

// Published 30-digit Gauss–Kronrod nodes and weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

// 15-point Kronrod rule with the embedded 7-point Gauss rule as error estimate.
fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Adaptive Gauss–Kronrod (7/15) integration of `f` over `[a, b]`.
///
/// The integrand is never evaluated at the endpoints. The interval with the
/// largest error estimate is bisected until the summed estimate falls below
/// `spec.abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, a, b);
    let mut total_error = first.error;
    heap.push(first);
    let mut evaluations = 15;

    while total_error > spec.abs_tol && heap.len() < spec.max_intervals {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        evaluations += 30;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Rebuild the running error from scratch now and then so that
        // cancellation in the incremental update cannot hide a failure.
        if heap.len() % 64 == 0 {
            total_error = compensated_sum(heap.iter().map(|s| s.error));
        }
    }

    let segments = heap.into_vec();
    let value = compensated_sum(segments.iter().map(|s| s.value));
    let error_bound = compensated_sum(segments.iter().map(|s| s.error));
    if !value.is_finite() || error_bound > spec.abs_tol {
        return Err(Error::QuadratureFailure {
            estimate: value,
            error_bound,
        });
    }
    Ok(Integral {
        value,
        error_bound,
        evaluations,
    })
}
