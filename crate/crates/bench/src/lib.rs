//! Benchmark fixtures for kchain. The benches live in `benches/`.

use kchain_core::LatticeSpec;

/// Pair-window chains used by the enumeration benches.
pub fn pair_chains() -> Vec<LatticeSpec> {
    [12, 16, 20]
        .into_iter()
        .map(|n| LatticeSpec::new(n, 2).expect("valid lattice"))
        .collect()
}
