//! Benchmark fixtures shared by the criterion targets.

use dbk_core::{catalog, DbSpace};

/// Chebyshev models of increasing size used across the benchmarks.
pub fn chebyshev_models() -> Vec<(usize, DbSpace)> {
    [4usize, 8, 16, 32].into_iter().map(|n| (n, catalog(&format!("chebN:{n}")).expect("catalog model"))).collect()
}
