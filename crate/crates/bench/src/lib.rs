//! Shared instance builders for the benchmark suite.

use scss_core::randgen::{random_instance, RandomSpec};
use scss_core::Instance;

/// A reproducible strongly connected instance sized for microbenchmarks.
pub fn seeded(n: u32, m: u32, k1: u32, seed: u64) -> Instance {
    random_instance(&RandomSpec { n, m, wmax: 10, k1, k2: 1, seed, strongly_connected: true })
        .expect("benchmark spec is well formed")
}
