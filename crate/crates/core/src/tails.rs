//! Heavy tails as boundary concentration of `U = G(X)`.
//!
//! All diagnostics live on the coordinate variable and are never pulled
//! back. The concentration index `E[U^r] + E[(1 - U)^r]` is a crate-defined
//! statistic: it weights both boundary points symmetrically and grows as
//! mass moves toward 0 and 1.

use serde::Serialize;

use crate::charts::Chart;
use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::law::Law;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderMoment {
    pub order: u32,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub epsilon: f64,
    /// `P(U < eps)`.
    pub lower_mass: f64,
    /// `P(U > 1 - eps)`.
    pub upper_mass: f64,
    /// `E[U^r]` for each requested order.
    pub high_order_moments: Vec<OrderMoment>,
    pub chart: String,
}

fn check_epsilon(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::OutOfRange {
            what: "epsilon",
            value: eps,
            expected: "(0, 1/2)",
        });
    }
    Ok(())
}

/// `P(G(X) < level)` under a parametric law.
fn coordinate_below(d: &Distribution, chart: &Chart, level: f64) -> f64 {
    let range = chart.range();
    if level <= range.lo {
        return 0.0;
    }
    if level >= range.hi {
        return 1.0;
    }
    let x = match chart.inverse(level) {
        Ok(x) => x,
        Err(_) => return f64::NAN,
    };
    if chart.is_increasing() {
        d.cdf(x)
    } else {
        d.sf(x)
    }
}

/// `P(G(X) > level)` under a parametric law.
fn coordinate_above(d: &Distribution, chart: &Chart, level: f64) -> f64 {
    let range = chart.range();
    if level >= range.hi {
        return 0.0;
    }
    if level <= range.lo {
        return 1.0;
    }
    let x = match chart.inverse(level) {
        Ok(x) => x,
        Err(_) => return f64::NAN,
    };
    if chart.is_increasing() {
        d.sf(x)
    } else {
        d.cdf(x)
    }
}

/// Mass of `U` within `eps` of each boundary point, plus raw moments of
/// the requested orders.
pub fn boundary_mass(law: Law<'_>, chart: &Chart, eps: f64, orders: &[u32]) -> Result<BoundaryReport> {
    check_epsilon(eps)?;
    let (lower_mass, upper_mass) = match law {
        Law::Sample(s) => {
            let coords = Law::sample_coordinates(s, chart)?;
            let n = coords.len() as f64;
            let lo = coords.iter().filter(|&&u| u < eps).count() as f64 / n;
            let hi = coords.iter().filter(|&&u| u > 1.0 - eps).count() as f64 / n;
            (lo, hi)
        }
        Law::Distribution { dist, .. } => {
            let (lo, hi) = dist.support();
            let dom = chart.domain();
            if lo < dom.lo || hi > dom.hi {
                return Err(Error::DomainViolation {
                    value: if lo < dom.lo { lo } else { hi },
                    component: None,
                });
            }
            (
                coordinate_below(dist, chart, eps),
                coordinate_above(dist, chart, 1.0 - eps),
            )
        }
    };
    let high_order_moments = orders
        .iter()
        .map(|&r| {
            if r == 0 {
                return Err(Error::InvalidParameter("moment order must be at least 1".into()));
            }
            Ok(OrderMoment {
                order: r,
                value: law.expect(chart, |u| u.powi(r as i32))?.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryReport {
        epsilon: eps,
        lower_mass,
        upper_mass,
        high_order_moments,
        chart: chart.describe(),
    })
}

/// `E[U^r] + E[(1 - U)^r]`.
pub fn boundary_concentration_index(law: Law<'_>, chart: &Chart, r: u32) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let k = r as i32;
    Ok(law.expect(chart, |u| u.powi(k) + (1.0 - u).powi(k))?.value)
}
