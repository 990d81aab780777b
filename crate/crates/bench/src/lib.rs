//! Fixtures shared by the benchmarks.

use probgeo_core::{Chart, Distribution, Sample};

/// Standard Cauchy draws, a law with no mean, for sample-path benchmarks.
pub fn cauchy_sample(n: usize, seed: u64) -> Sample {
    Distribution::cauchy(0.0, 1.0)
        .and_then(|d| d.sample(n, seed))
        .expect("valid law and n > 0")
}

pub fn gaussian_chart() -> Chart {
    Chart::from_distribution(Distribution::standard_normal())
}
