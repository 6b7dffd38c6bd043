//! Ground-state degeneracy `dim ker H` by three independent routes.
//!
//! * [`count_enumerate`] scans every basis index with the shift-and-mask
//!   run detector, optionally split over worker threads.
//! * [`count_recurrence`] runs the k-step recurrence
//!   `S_n = S_{n−1} + … + S_{n−k}` in arbitrary precision.
//! * [`count_modular`] (k = 2 only) applies the row-label criterion: a row
//!   `r ∈ [1, 2^n]` of the lifted matrix is zero iff
//!   `r mod 4x ∈ {1, …, 3x}` for every block size `4x ∈ {4, 8, …, 2^n}`.
//!
//! Fibonacci numbers follow the shifted convention `F_0 = 1, F_1 = 1,
//! F_2 = 2`, so the k = 2 degeneracy of an `n`-site chain is `F_{n+1}`
//! (classical `F_{n+2}`).

use std::collections::VecDeque;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::thread;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{ones_run_starts, BasisState, LatticeSpec};

/// Largest chain the modular row criterion will sweep.
pub const MODULAR_MAX_SITES: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Enumerate,
    Recurrence,
    Modular,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Enumerate, Method::Recurrence, Method::Modular];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Enumerate => "enumerate",
            Method::Recurrence => "recurrence",
            Method::Modular => "modular",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerate" => Ok(Method::Enumerate),
            "recurrence" => Ok(Method::Recurrence),
            "modular" => Ok(Method::Modular),
            other => Err(Error::Domain(format!("unknown counting method {other:?}"))),
        }
    }
}

/// An exact ground-state count and the method that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyResult {
    pub n: u32,
    pub k: u32,
    pub count: BigUint,
    pub method: Method,
}

/// Initial values `S_0 … S_{k−1}` of the k-step recurrence.
///
/// Every string shorter than `k` avoids a run of `k` ones, so `S_m = 2^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSeeds {
    k: u32,
    seeds: Vec<BigUint>,
}

impl RecurrenceSeeds {
    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!(
                "recurrence order k must be at least 2, got {k}"
            )));
        }
        let seeds = (0..k).map(|m| BigUint::one() << m).collect();
        Ok(Self { k, seeds })
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn seeds(&self) -> &[BigUint] {
        &self.seeds
    }
}

/// Infinite stream `S_0, S_1, …` of k-step recurrence values.
#[derive(Debug, Clone)]
pub struct KStepSequence {
    seeds: std::vec::IntoIter<BigUint>,
    window: VecDeque<BigUint>,
    window_sum: BigUint,
    k: usize,
}

impl KStepSequence {
    pub fn new(seeds: RecurrenceSeeds) -> Self {
        Self {
            k: seeds.k as usize,
            seeds: seeds.seeds.into_iter(),
            window: VecDeque::new(),
            window_sum: BigUint::zero(),
        }
    }
}

impl Iterator for KStepSequence {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        // `window` holds the last (up to) k values and `window_sum` their sum.
        let value = match self.seeds.next() {
            Some(seed) => seed,
            None => self.window_sum.clone(),
        };
        self.window_sum += &value;
        self.window.push_back(value.clone());
        if self.window.len() > self.k {
            let dropped = self.window.pop_front().expect("window is non-empty");
            self.window_sum -= dropped;
        }
        Some(value)
    }
}

/// `S_0, …, S_{n_max}` for window length `k`.
pub fn recurrence_sequence(k: u32, n_max: usize) -> Result<Vec<BigUint>> {
    Ok(KStepSequence::new(RecurrenceSeeds::new(k)?)
        .take(n_max + 1)
        .collect())
}

/// Ground-state count from the k-step recurrence; exact for any `n`.
pub fn count_recurrence(n: u32, k: u32) -> Result<DegeneracyResult> {
    let count = KStepSequence::new(RecurrenceSeeds::new(k)?)
        .nth(n as usize)
        .expect("sequence is infinite");
    Ok(DegeneracyResult {
        n,
        k,
        count,
        method: Method::Recurrence,
    })
}

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |p| p.get())
}

/// Splits `range` into `parts` contiguous, disjoint, covering chunks.
pub(crate) fn partition(range: Range<u64>, parts: usize) -> Vec<Range<u64>> {
    let parts = parts.max(1) as u64;
    let len = range.end - range.start;
    let base = len / parts;
    let extra = len % parts;
    let mut start = range.start;
    (0..parts)
        .map(|i| {
            let end = start + base + u64::from(i < extra);
            let chunk = start..end;
            start = end;
            chunk
        })
        .collect()
}

fn parallel_count<F>(range: Range<u64>, workers: usize, predicate: F) -> u64
where
    F: Fn(u64) -> bool + Sync,
{
    let chunks = partition(range, workers);
    if chunks.len() == 1 {
        return chunks[0].clone().filter(|&i| predicate(i)).count() as u64;
    }
    let predicate = &predicate;
    thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(move || chunk.filter(|&i| predicate(i)).count() as u64))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting worker panicked"))
            .sum()
    })
}

/// Ground-state count by scanning all `2^n` basis indices.
pub fn count_enumerate(spec: &LatticeSpec) -> Result<DegeneracyResult> {
    count_enumerate_with_workers(spec, default_workers())
}

/// [`count_enumerate`] with the index range split into `workers` chunks.
pub fn count_enumerate_with_workers(
    spec: &LatticeSpec,
    workers: usize,
) -> Result<DegeneracyResult> {
    spec.require_indexed("enumerate")?;
    let (n, k) = (spec.sites(), spec.window());
    let count = parallel_count(0..1u64 << n, workers, |i| ones_run_starts(i, k) == 0);
    Ok(DegeneracyResult {
        n,
        k,
        count: count.into(),
        method: Method::Enumerate,
    })
}

/// Whether the 1-based row label `row` of the `n`-site, k = 2 Hamiltonian is
/// a zero row according to the block-size criterion.
pub fn modular_row_is_zero(row: u64, n: u32) -> bool {
    (0..n.saturating_sub(1)).all(|e| {
        let x = 1u64 << e;
        let residue = row % (4 * x);
        (1..=3 * x).contains(&residue)
    })
}

/// Ground-state count from the modular row criterion (k = 2 only).
pub fn count_modular(n: u32, k: u32) -> Result<DegeneracyResult> {
    count_modular_with_workers(n, k, default_workers())
}

pub fn count_modular_with_workers(n: u32, k: u32, workers: usize) -> Result<DegeneracyResult> {
    if k != 2 {
        return Err(Error::Unsupported {
            method: "modular",
            reason: format!("window length k = {k} (only k = 2)"),
        });
    }
    if n < 2 {
        return Err(Error::Range {
            what: "n",
            value: n.into(),
            range: format!("[2, {MODULAR_MAX_SITES}]"),
        });
    }
    if n > MODULAR_MAX_SITES {
        return Err(Error::Capacity {
            method: "modular",
            cap: format!("n <= {MODULAR_MAX_SITES}"),
            requested: format!("n = {n}"),
            hint: "use the recurrence method for larger chains",
        });
    }
    let count = parallel_count(1..(1u64 << n) + 1, workers, |row| modular_row_is_zero(row, n));
    Ok(DegeneracyResult {
        n,
        k,
        count: count.into(),
        method: Method::Modular,
    })
}

/// Zero-energy basis states in ascending index order.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    n: u32,
    k: u32,
    next: u64,
    end: u64,
    remaining: usize,
}

impl Iterator for KernelBasis {
    type Item = BasisState;

    fn next(&mut self) -> Option<BasisState> {
        if self.remaining == 0 {
            return None;
        }
        while self.next < self.end {
            let index = self.next;
            self.next += 1;
            if ones_run_starts(index, self.k) == 0 {
                self.remaining -= 1;
                return Some(BasisState::new_unchecked(self.n, index));
            }
        }
        None
    }
}

/// Streams up to `limit` ground states of `spec`.
pub fn kernel_basis(spec: &LatticeSpec, limit: usize) -> Result<KernelBasis> {
    spec.require_indexed("kernel_basis")?;
    Ok(KernelBasis {
        n: spec.sites(),
        k: spec.window(),
        next: 0,
        end: 1u64 << spec.sites(),
        remaining: limit,
    })
}

/// Both sides of `F_{n+1} = 2^n − Σ_{j=0}^{n−2} 2^{n−2−j} F_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub n: u32,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

/// Checks the zero-row identity for the k = 2 chain of `n ≥ 2` sites.
///
/// The left side comes from [`count_recurrence`]; the right side uses a
/// separate Fibonacci loop with `F_0 = F_1 = 1`.
pub fn identity_check(n: u32) -> Result<IdentityReport> {
    if n < 2 {
        return Err(Error::Domain(format!("identity requires n >= 2, got {n}")));
    }
    let lhs = BigInt::from(count_recurrence(n, 2)?.count);

    let mut fib = Vec::with_capacity(n as usize - 1);
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for _ in 0..=n - 2 {
        fib.push(a.clone());
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    let subtracted: BigInt = fib
        .iter()
        .enumerate()
        .map(|(j, f)| f << (n as usize - 2 - j))
        .sum();
    let rhs = (BigInt::one() << n) - subtracted;
    Ok(IdentityReport {
        n,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}
