//! Seeded uniform streams.
//!
//! Every random draw in the crate comes from SplitMix64 (Steele, Lea and
//! Flood, 2014): state advances by `0x9E3779B97F4A7C15` and each output is
//! the state passed through the `mix64` finalizer. A 64-bit output `w` maps
//! to the open unit interval as `((w >> 12) + 0.5) / 2^52`.
//!
//! Replicate `r` of an experiment seeded with `seed` draws from the stream
//! seeded with `sub_seed(seed, r)`: the first output of a stream seeded with
//! `seed` is XOR-ed with `r` and used to seed a fresh stream, whose first
//! output is the sub-seed.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

const TWO_POW_NEG_52: f64 = 1.0 / (1u64 << 52) as f64;

/// A deterministic stream of uniforms on the open interval (0, 1).
#[derive(Debug, Clone)]
pub struct UniformStream {
    inner: SplitMix64,
}

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Next uniform, strictly inside (0, 1).
    pub fn next_open01(&mut self) -> f64 {
        ((self.inner.next_u64() >> 12) as f64 + 0.5) * TWO_POW_NEG_52
    }
}

impl Iterator for UniformStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.next_open01())
    }
}

/// Seed for replicate `replicate` of an experiment run with `seed`.
pub fn sub_seed(seed: u64, replicate: u64) -> u64 {
    let base = SplitMix64::seed_from_u64(seed).next_u64();
    SplitMix64::seed_from_u64(base ^ replicate).next_u64()
}
