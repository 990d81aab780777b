//! Probability-coordinate geometry.
//!
//! A probability coordinate chart `G` maps a value interval monotonically
//! onto `(0, 1)`. Averaging in those coordinates and pulling the result back
//! through `G^{-1}` gives the probability barycenter `G^{-1}(E[G(X)])`, which
//! exists for any law because `G(X)` is bounded. This crate provides:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`distributions`] | cdf / pdf / quantile / seeded inverse-transform sampling |
//! | [`charts`] | analytic, empirical and transformed charts; induced distance |
//! | [`barycenter`] | sample and distribution barycenters, Kolmogorov equivalence, argmin oracle |
//! | [`moments`] | initial, centred and absolute Kolmogorov moments, pseudo-generating function |
//! | [`asymptotics`] | delta-method standard errors, intrinsic CLT constants, LLN/CLT harnesses |
//! | [`tails`] | boundary mass and boundary concentration index |
//! | [`multivariate`] | componentwise coordinates, pseudo-observations, corner masses |
//!
//! ```
//! use probgeo_core::{barycenter_of_sample, Chart, Distribution, Sample};
//!
//! let chart = Chart::from_distribution(Distribution::standard_normal());
//! let data = Sample::new(vec![-1.0, 1.0, 250.0]).unwrap();
//! let report = barycenter_of_sample(&data, &chart).unwrap();
//! assert!(report.barycenter < 1.0);
//! ```

pub mod asymptotics;
pub mod barycenter;
pub mod charts;
pub mod distributions;
pub mod error;
pub mod law;
pub mod moments;
pub mod multivariate;
pub mod numerics;
pub mod rng;
pub mod sample;
pub mod tails;

pub use asymptotics::{
    delta_method_stderr, intrinsic_clt_variance, median_clt_variance, run_clt_experiment, run_lln_experiment,
    AsymptoticReport, LlnReport, SimulationReport,
};
pub use barycenter::{
    argmin_characterization_check, barycenter_of_distribution, barycenter_of_sample, kolmogorov_equivalent,
    BarycenterReport, GridSpec,
};
pub use charts::{
    affine_transform, chart_from_distribution, chart_from_sample, compose_monotone, induced_distance, Chart, ChartKind,
    ChartSpec, EmpiricalChart, Interval, MonotoneMap,
};
pub use distributions::{Distribution, Family};
pub use error::{Error, Result};
pub use law::Law;
pub use moments::{
    absolute_centred_moment, centred_moment, initial_moment, kolmogorov_variance, pseudo_mgf, pseudo_mgf_derivative,
    MomentReport,
};
pub use multivariate::{
    corner_mass, multivariate_barycenter, pseudo_observations, pushforward, ChartBundle, CoordinateMatrix, Corner,
    CubeReport, VectorSample,
};
pub use numerics::QuadratureSpec;
pub use sample::Sample;
pub use tails::{boundary_concentration_index, boundary_mass, BoundaryReport};
