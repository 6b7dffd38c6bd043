//! Lattice parameters, basis-state indexing and the diagonal energy function.
//!
//! Sites are numbered `1..=n` from the left. Site 1 is the most significant
//! bit of the basis index, so `|0…0⟩` has index 0 and `|1…1⟩` has index
//! `2^n − 1` (the last row and column of every matrix in [`crate::dense`]).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest chain whose basis states are addressed by machine integers.
pub const MAX_INDEXED_SITES: u32 = 40;

/// Largest window for which [`local_matrix`] materializes its diagonal.
pub const MAX_LOCAL_WINDOW: u32 = 12;

/// A chain of `n` qubits with projectors acting on windows of `k` sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    n: u32,
    k: u32,
}

impl LatticeSpec {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!(
                "window length k must be at least 2, got {k}"
            )));
        }
        Ok(Self { n, k })
    }

    /// Number of sites.
    pub fn sites(&self) -> u32 {
        self.n
    }

    /// Number of adjacent sites each projector acts on.
    pub fn window(&self) -> u32 {
        self.k
    }

    /// Number of interaction terms, `max(n − k + 1, 0)`.
    pub fn window_count(&self) -> u32 {
        (self.n + 1).saturating_sub(self.k)
    }

    /// Dimension of the state space, or `None` when `2^n` overflows `u64`.
    pub fn dimension(&self) -> Option<u64> {
        1u64.checked_shl(self.n).filter(|_| self.n < 64)
    }

    pub(crate) fn require_indexed(&self, method: &'static str) -> Result<()> {
        if self.n > MAX_INDEXED_SITES {
            return Err(Error::Capacity {
                method,
                cap: format!("n <= {MAX_INDEXED_SITES}"),
                requested: format!("n = {}", self.n),
                hint: "use the recurrence method for larger chains",
            });
        }
        Ok(())
    }
}

/// One computational basis vector of an `n`-site chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    n: u32,
    index: u64,
}

impl BasisState {
    pub fn from_index(n: u32, index: u64) -> Result<Self> {
        if n > MAX_INDEXED_SITES {
            return Err(Error::Range {
                what: "n",
                value: n.into(),
                range: format!("[0, {MAX_INDEXED_SITES}]"),
            });
        }
        if index >> n != 0 {
            return Err(Error::Range {
                what: "index",
                value: index.into(),
                range: format!("[0, 2^{n})"),
            });
        }
        Ok(Self { n, index })
    }

    /// Builds a state from site values, site 1 first.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() > MAX_INDEXED_SITES as usize {
            return Err(Error::Range {
                what: "n",
                value: bits.len() as i128,
                range: format!("[0, {MAX_INDEXED_SITES}]"),
            });
        }
        let mut index = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(Error::Domain(format!("site value must be 0 or 1, got {b}")));
            }
            index = (index << 1) | u64::from(b);
        }
        Ok(Self {
            n: bits.len() as u32,
            index,
        })
    }

    pub(crate) fn new_unchecked(n: u32, index: u64) -> Self {
        debug_assert!(n <= MAX_INDEXED_SITES && index >> n == 0);
        Self { n, index }
    }

    pub fn sites(&self) -> u32 {
        self.n
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Site values, site 1 first.
    pub fn bits(&self) -> Vec<u8> {
        (1..=self.n).map(|site| self.site(site)).collect()
    }

    /// Value of the 1-based `site`.
    pub fn site(&self, site: u32) -> u8 {
        debug_assert!((1..=self.n).contains(&site));
        ((self.index >> (self.n - site)) & 1) as u8
    }

    /// The same chain with `site` flipped.
    pub fn flipped(&self, site: u32) -> Result<Self> {
        if !(1..=self.n).contains(&site) {
            return Err(Error::Range {
                what: "site",
                value: site.into(),
                range: format!("[1, {}]", self.n),
            });
        }
        Ok(Self {
            n: self.n,
            index: self.index ^ (1u64 << (self.n - site)),
        })
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for site in 1..=self.n {
            f.write_str(if self.site(site) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BasisState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('|').trim_end_matches('⟩').trim_end_matches('>');
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Domain(format!("invalid site character {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_bits(&bits)
    }
}

/// Bit `j` of the result is set iff bits `j, j+1, …, j+k−1` of `bits` are all
/// set. Uses O(log k) shift-and-mask steps.
#[inline]
pub(crate) fn ones_run_starts(bits: u64, k: u32) -> u64 {
    debug_assert!(k >= 1);
    if k > 64 {
        return 0;
    }
    let mut runs = bits;
    let mut len = 1u32;
    while len * 2 <= k {
        runs &= runs >> len;
        len *= 2;
    }
    if len < k {
        runs &= runs >> (k - len);
    }
    runs
}

/// Energy of the projector on sites `i..i+k` (1-based): 1 iff all are set.
pub fn window_energy(state: &BasisState, i: u32, k: u32) -> Result<u32> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "window length k must be at least 2, got {k}"
        )));
    }
    let n = state.n;
    if i < 1 || k > n || i > n - k + 1 {
        return Err(Error::Range {
            what: "i",
            value: i.into(),
            range: if k > n {
                format!("(empty: no window of length {k} fits in {n} sites)")
            } else {
                format!("[1, {}]", n - k + 1)
            },
        });
    }
    let shift = n + 1 - i - k;
    let mask = ((1u64 << k) - 1) << shift;
    Ok(u32::from(state.index & mask == mask))
}

/// Eigenvalue of the Hamiltonian on `state`: the number of all-ones windows.
pub fn total_energy(state: &BasisState, spec: &LatticeSpec) -> Result<u32> {
    if state.n != spec.n {
        return Err(Error::Contract(format!(
            "state has {} sites but the lattice has {}",
            state.n, spec.n
        )));
    }
    Ok(energy_of_index(state.index, spec.k))
}

#[inline]
pub(crate) fn energy_of_index(index: u64, k: u32) -> u32 {
    ones_run_starts(index, k).count_ones()
}

/// Diagonal of the `2^k × 2^k` local projector onto `|1…1⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalOperatorMatrix {
    k: u32,
    diagonal: Vec<i32>,
}

impl LocalOperatorMatrix {
    pub fn window(&self) -> u32 {
        self.k
    }

    pub fn diagonal(&self) -> &[i32] {
        &self.diagonal
    }

    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn local_matrix(k: u32) -> Result<LocalOperatorMatrix> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "window length k must be at least 2, got {k}"
        )));
    }
    if k > MAX_LOCAL_WINDOW {
        return Err(Error::Capacity {
            method: "local_matrix",
            cap: format!("k <= {MAX_LOCAL_WINDOW}"),
            requested: format!("k = {k}"),
            hint: "the local operator is only materialized for dense verification",
        });
    }
    let dim = 1usize << k;
    let mut diagonal = vec![0; dim];
    diagonal[dim - 1] = 1;
    Ok(LocalOperatorMatrix { k, diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(s: &str) -> BasisState {
        s.parse().unwrap()
    }

    fn naive_energy(s: &BasisState, k: u32) -> u32 {
        let bits = s.bits();
        if bits.len() < k as usize {
            return 0;
        }
        bits.windows(k as usize)
            .filter(|w| w.iter().all(|&b| b == 1))
            .count() as u32
    }

    #[test]
    fn window_energy_examples() {
        assert_eq!(window_energy(&state("11"), 1, 2).unwrap(), 1);
        assert_eq!(window_energy(&state("10"), 1, 2).unwrap(), 0);
        let zeros = state("0000000");
        for k in 2..=7 {
            for i in 1..=(7 - k + 1) {
                assert_eq!(window_energy(&zeros, i, k).unwrap(), 0);
            }
        }
    }

    #[test]
    fn window_energy_rejects_bad_positions() {
        let s = state("1111");
        assert!(matches!(window_energy(&s, 0, 2), Err(Error::Range { .. })));
        assert!(matches!(window_energy(&s, 4, 2), Err(Error::Range { .. })));
        assert!(matches!(window_energy(&s, 1, 5), Err(Error::Range { .. })));
        assert_eq!(window_energy(&s, 3, 2).unwrap(), 1);
    }

    #[test]
    fn total_energy_examples() {
        let spec = |n, k| LatticeSpec::new(n, k).unwrap();
        assert_eq!(total_energy(&state("11"), &spec(2, 2)).unwrap(), 1);
        assert_eq!(total_energy(&state("101"), &spec(3, 2)).unwrap(), 0);
        assert_eq!(total_energy(&state("11011"), &spec(5, 2)).unwrap(), 2);
        assert_eq!(total_energy(&state("111"), &spec(3, 2)).unwrap(), 2);
        // n < k: no windows
        assert_eq!(total_energy(&state("11"), &spec(2, 3)).unwrap(), 0);
        assert_eq!(total_energy(&state(""), &spec(0, 2)).unwrap(), 0);
    }

    #[test]
    fn total_energy_rejects_length_mismatch() {
        let spec = LatticeSpec::new(4, 2).unwrap();
        assert!(matches!(
            total_energy(&state("101"), &spec),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn lattice_spec_rejects_short_windows() {
        assert!(LatticeSpec::new(5, 1).is_err());
        assert!(LatticeSpec::new(0, 2).is_ok());
        assert_eq!(LatticeSpec::new(5, 3).unwrap().window_count(), 3);
        assert_eq!(LatticeSpec::new(2, 3).unwrap().window_count(), 0);
    }

    #[test]
    fn local_matrix_examples() {
        assert_eq!(local_matrix(2).unwrap().diagonal(), &[0, 0, 0, 1]);
        assert_eq!(local_matrix(3).unwrap().diagonal(), &[0, 0, 0, 0, 0, 0, 0, 1]);
        for k in 2..=MAX_LOCAL_WINDOW {
            let m = local_matrix(k).unwrap();
            assert_eq!(m.diagonal().iter().sum::<i32>(), 1);
            assert_eq!(m.dimension(), 1 << k);
        }
        assert!(matches!(local_matrix(1), Err(Error::Domain(_))));
        assert!(matches!(local_matrix(MAX_LOCAL_WINDOW + 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn index_bits_bijection_exhaustive() {
        for n in 0..=20u32 {
            for index in 0..(1u64 << n) {
                let s = BasisState::from_index(n, index).unwrap();
                let back = BasisState::from_bits(&s.bits()).unwrap();
                assert_eq!(back, s);
            }
        }
        assert_eq!(state("111").index(), 7);
        assert_eq!(state("100").index(), 4);
        assert_eq!(state("|101⟩").to_string(), "101");
    }

    #[test]
    fn total_energy_is_sum_of_windows_exhaustive() {
        for n in 0..=16u32 {
            for k in 2..=n.max(2) + 1 {
                let spec = LatticeSpec::new(n, k).unwrap();
                for index in 0..(1u64 << n) {
                    let s = BasisState::from_index(n, index).unwrap();
                    let e = total_energy(&s, &spec).unwrap();
                    let windows: u32 = (1..=spec.window_count())
                        .map(|i| window_energy(&s, i, k).unwrap())
                        .sum();
                    assert_eq!(e, windows, "n={n} k={k} s={s}");
                    assert_eq!(e, naive_energy(&s, k));
                }
            }
        }
    }

    #[test]
    fn all_ones_is_the_unique_maximum() {
        for n in 2..=14u32 {
            for k in 2..=n {
                let spec = LatticeSpec::new(n, k).unwrap();
                let top = spec.window_count();
                let ones = BasisState::from_index(n, (1u64 << n) - 1).unwrap();
                assert_eq!(total_energy(&ones, &spec).unwrap(), top);
                for site in 1..=n {
                    let flipped = ones.flipped(site).unwrap();
                    assert!(total_energy(&flipped, &spec).unwrap() < top);
                }
                let attained = (0..(1u64 << n))
                    .filter(|&i| energy_of_index(i, k) == top)
                    .count();
                assert_eq!(attained, 1);
            }
        }
    }

    #[test]
    fn run_detector_handles_wide_windows() {
        assert_eq!(ones_run_starts(u64::MAX, 64), 1);
        assert_eq!(ones_run_starts(u64::MAX >> 1, 64), 0);
        assert_eq!(ones_run_starts(0b1110111, 3), 0b0010001);
        assert_eq!(ones_run_starts(u64::MAX, 65), 0);
    }
}
