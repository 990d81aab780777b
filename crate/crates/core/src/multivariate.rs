//! Componentwise probability coordinates on the unit cube.
//!
//! A [`ChartBundle`] applies one chart per component, so its inverse is
//! coordinatewise. The intrinsic (copula) case is realized empirically by
//! rank-based pseudo-observations.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::barycenter::pull_back;
use crate::charts::{default_tail_slope, Chart};
use crate::error::{Error, Result};
use crate::numerics::compensated_mean;
use crate::sample::Sample;

/// Row-major matrix of `n` observations of dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSample {
    dim: usize,
    data: Vec<f64>,
}

impl VectorSample {
    /// All rows must be finite and of equal, non-zero length.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InsufficientData("vector sample has no rows".into()))?;
        if dim == 0 {
            return Err(Error::InvalidParameter("rows must have at least one component".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!("non-finite value {bad}")));
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let n = columns.first().map(Vec::len).unwrap_or(0);
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidParameter("columns have different lengths".into()));
        }
        Self::new((0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }
}

/// Row-major matrix of coordinates in `(0, 1)^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl CoordinateMatrix {
    fn from_columns(columns: Vec<Vec<f64>>) -> Self {
        let dim = columns.len();
        let n = columns[0].len();
        let mut data = Vec::with_capacity(n * dim);
        for i in 0..n {
            data.extend(columns.iter().map(|c| c[i]));
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    pub fn column_means(&self) -> Vec<f64> {
        (0..self.dim).map(|j| compensated_mean(&self.column(j))).collect()
    }
}

/// One chart per component.
#[derive(Debug, Clone)]
pub struct ChartBundle {
    charts: Vec<Chart>,
}

impl ChartBundle {
    pub fn new(charts: Vec<Chart>) -> Result<Self> {
        if charts.is_empty() {
            return Err(Error::InvalidParameter("chart bundle is empty".into()));
        }
        Ok(Self { charts })
    }

    /// Empirical chart of each column of `vs`.
    pub fn empirical(vs: &VectorSample) -> Result<Self> {
        let charts = (0..vs.dim())
            .map(|j| {
                let col = Sample::new(vs.column(j))?;
                Chart::from_sample(&col, default_tail_slope(&col))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(charts)
    }

    pub fn dim(&self) -> usize {
        self.charts.len()
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    /// Componentwise affine transform `a_i G_i + b_i`.
    pub fn affine(&self, a: &[f64], b: &[f64]) -> Result<Self> {
        if a.len() != self.dim() || b.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.len().min(b.len()),
            });
        }
        let charts = self
            .charts
            .iter()
            .zip(a.iter().zip(b))
            .map(|(c, (&ai, &bi))| c.affine(ai, bi))
            .collect::<Result<Vec<_>>>()?;
        Self::new(charts)
    }
}

fn check_dims(vs: &VectorSample, bundle: &ChartBundle) -> Result<()> {
    if vs.dim() != bundle.dim() {
        return Err(Error::DimensionMismatch {
            expected: bundle.dim(),
            found: vs.dim(),
        });
    }
    Ok(())
}

/// `U_i = G_i(X_i)` for every row.
pub fn pushforward(vs: &VectorSample, bundle: &ChartBundle) -> Result<CoordinateMatrix> {
    check_dims(vs, bundle)?;
    let mut data = Vec::with_capacity(vs.data.len());
    for row in vs.rows() {
        for (j, (&x, chart)) in row.iter().zip(&bundle.charts).enumerate() {
            let u = chart.coordinate(x).map_err(|_| Error::DomainViolation {
                value: x,
                component: Some(j),
            })?;
            data.push(u);
        }
    }
    Ok(CoordinateMatrix { dim: vs.dim(), data })
}

/// Average ranks (1-based) of `values`; tied values share the mean of
/// their positions.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && values[order[end + 1]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 2) as f64 / 2.0;
        for &idx in &order[start..=end] {
            ranks[idx] = rank;
        }
        start = end + 1;
    }
    ranks
}

/// Componentwise `rank / (n + 1)`, ties by average rank.
pub fn pseudo_observations(vs: &VectorSample) -> Result<CoordinateMatrix> {
    let n = vs.len();
    if n < 2 {
        return Err(Error::InsufficientData(
            "pseudo-observations need at least 2 rows".into(),
        ));
    }
    let scale = (n + 1) as f64;
    let columns = (0..vs.dim())
        .map(|j| average_ranks(&vs.column(j)).into_iter().map(|r| r / scale).collect())
        .collect();
    Ok(CoordinateMatrix::from_columns(columns))
}

/// Which end of the unit interval each component approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lo,
    Hi,
}

/// A vertex of the unit cube.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Corner(pub Vec<Side>);

impl Corner {
    /// All `2^dim` corners, in lexicographic order with `Lo < Hi`.
    pub fn all(dim: usize) -> Vec<Corner> {
        (0..1usize << dim)
            .map(|mask| {
                Corner(
                    (0..dim)
                        .map(|j| {
                            if mask >> (dim - 1 - j) & 1 == 1 {
                                Side::Hi
                            } else {
                                Side::Lo
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Side::Lo => "lo",
                Side::Hi => "hi",
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Largest dimension for which all corners are enumerated.
pub const MAX_CORNER_DIM: usize = 16;

/// Fraction of rows whose every component lies in the band of the corner:
/// `u < eps` for `Lo`, `u > 1 - eps` for `Hi`.
pub fn corner_mass(coords: &CoordinateMatrix, eps: f64, corner: &Corner) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::OutOfRange {
            what: "epsilon",
            value: eps,
            expected: "(0, 1/2)",
        });
    }
    if corner.0.len() != coords.dim() {
        return Err(Error::DimensionMismatch {
            expected: coords.dim(),
            found: corner.0.len(),
        });
    }
    let hits = coords
        .rows()
        .filter(|row| {
            row.iter().zip(&corner.0).all(|(&u, side)| match side {
                Side::Lo => u < eps,
                Side::Hi => u > 1.0 - eps,
            })
        })
        .count();
    Ok(hits as f64 / coords.len() as f64)
}

/// Corner masses for every vertex, keyed by labels such as `hi,hi`.
pub fn all_corner_masses(coords: &CoordinateMatrix, eps: f64) -> Result<BTreeMap<String, f64>> {
    if coords.dim() > MAX_CORNER_DIM {
        return Err(Error::InvalidParameter(format!(
            "corner enumeration is limited to {MAX_CORNER_DIM} dimensions"
        )));
    }
    Corner::all(coords.dim())
        .into_iter()
        .map(|c| Ok((c.to_string(), corner_mass(coords, eps, &c)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubeReport {
    pub n: usize,
    pub coordinate_mean: Vec<f64>,
    pub barycenter: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub corner_masses: BTreeMap<String, f64>,
    pub charts: Vec<String>,
}

impl CubeReport {
    /// Fill `corner_masses` from `coords` at band width `eps`.
    pub fn with_corner_masses(mut self, coords: &CoordinateMatrix, eps: f64) -> Result<Self> {
        self.corner_masses = all_corner_masses(coords, eps)?;
        self.epsilon = Some(eps);
        Ok(self)
    }
}

/// Componentwise coordinate means pulled back through each chart.
pub fn multivariate_barycenter(vs: &VectorSample, bundle: &ChartBundle) -> Result<CubeReport> {
    let coords = pushforward(vs, bundle)?;
    let coordinate_mean = coords.column_means();
    let barycenter = coordinate_mean
        .iter()
        .zip(&bundle.charts)
        .enumerate()
        .map(|(j, (&m, chart))| pull_back(chart, m, Some(j)).map(|(b, _)| b))
        .collect::<Result<Vec<_>>>()?;
    Ok(CubeReport {
        n: vs.len(),
        coordinate_mean,
        barycenter,
        epsilon: None,
        corner_masses: BTreeMap::new(),
        charts: bundle.charts.iter().map(Chart::describe).collect(),
    })
}
