use thiserror::Error;

/// Errors raised by the probability-geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {value} is out of range {expected}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{}", domain_message(*.value, .component))]
    DomainViolation { value: f64, component: Option<usize> },

    /// The coordinate mean sits on (or numerically at) the edge of the chart
    /// range, so the pullback is meaningless.
    #[error("{}", boundary_message(*.coordinate_mean, .component))]
    BoundaryValue {
        coordinate_mean: f64,
        component: Option<usize>,
    },

    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    QuadratureFailure { estimate: f64, error_bound: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("map is not invertible: {0}")]
    NonInvertible(String),

    #[error("chart derivative unavailable at {0}")]
    DerivativeUnavailable(f64),

    #[error("degenerate sample: coordinate variance is zero")]
    DegenerateSample,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

fn domain_message(value: f64, component: &Option<usize>) -> String {
    match component {
        Some(c) => format!("value {value} in column {c} lies outside the chart domain"),
        None => format!("value {value} lies outside the chart domain"),
    }
}

fn boundary_message(mean: f64, component: &Option<usize>) -> String {
    match component {
        Some(c) => format!("coordinate mean {mean} of column {c} is on the chart boundary"),
        None => format!("coordinate mean {mean} is on the chart boundary"),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
