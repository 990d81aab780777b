//! Kolmogorov moments: moments of the coordinate variable `U = G(X)`,
//! optionally pulled back through `G^{-1}`.
//!
//! Since `U` is bounded every moment exists, whatever the tails of `X`.
//! Pullback is attempted only when the raw moment lies strictly inside the
//! chart range; otherwise the report carries `defined = false`.

use serde::Serialize;

use crate::barycenter::pull_back;
use crate::charts::Chart;
use crate::error::{Error, Result};
use crate::law::Law;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub order: u32,
    pub raw_coordinate_moment: f64,
    pub pulled_back: Option<f64>,
    pub centred: bool,
    pub absolute: bool,
    pub defined: bool,
    pub chart: String,
}

fn check_order(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("moment order must be at least 1".into()));
    }
    Ok(())
}

fn finish(chart: &Chart, order: u32, raw: f64, centred: bool, absolute: bool) -> MomentReport {
    let pulled_back = pull_back(chart, raw, None).ok().map(|(x, _)| x);
    MomentReport {
        order,
        raw_coordinate_moment: raw,
        pulled_back,
        centred,
        absolute,
        defined: pulled_back.is_some(),
        chart: chart.describe(),
    }
}

/// `E[U^r]`, pulled back to `G^{-1}(E[U^r])`.
pub fn initial_moment(law: Law<'_>, chart: &Chart, r: u32) -> Result<MomentReport> {
    check_order(r)?;
    let raw = law.expect(chart, |u| u.powi(r as i32))?.value;
    Ok(finish(chart, r, raw, false, false))
}

fn central<F>(law: Law<'_>, chart: &Chart, f: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mean = law.expect(chart, |u| u)?.value;
    Ok(law.expect(chart, |u| f(u - mean))?.value)
}

/// `E[(U - E U)^r]`.
pub fn centred_moment(law: Law<'_>, chart: &Chart, r: u32) -> Result<MomentReport> {
    check_order(r)?;
    let raw = central(law, chart, |d| d.powi(r as i32))?;
    Ok(finish(chart, r, raw, true, false))
}

/// `E[|U - E U|^r]`.
pub fn absolute_centred_moment(law: Law<'_>, chart: &Chart, r: u32) -> Result<MomentReport> {
    check_order(r)?;
    let raw = central(law, chart, |d| d.abs().powi(r as i32))?;
    Ok(finish(chart, r, raw, true, true))
}

/// Centred moment of order 2.
pub fn kolmogorov_variance(law: Law<'_>, chart: &Chart) -> Result<MomentReport> {
    centred_moment(law, chart, 2)
}

/// `phi(t) = E[exp(t U)]`.
pub fn pseudo_mgf(law: Law<'_>, chart: &Chart, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("t must be finite, got {t}")));
    }
    Ok(law.expect(chart, |u| (t * u).exp())?.value)
}

/// `phi^{(k)}(0) = E[U^k]`, evaluated through the moment identity.
pub fn pseudo_mgf_derivative(law: Law<'_>, chart: &Chart, k: u32) -> Result<f64> {
    if k == 0 {
        return Ok(1.0);
    }
    Ok(law.expect(chart, |u| u.powi(k as i32))?.value)
}
