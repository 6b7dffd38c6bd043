use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::dominant_root;
use crate::degeneracy::recurrence_sequence;
use crate::error::{Error, Result};

/// Largest chain length for per-site sequences.
pub const CONVERGENCE_MAX_SITES: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub n: u32,
    /// `S_n^{1/n}`.
    pub per_site: f64,
    /// `|per_site − dominant root|`.
    pub gap: f64,
}

/// Base-2 logarithm of a big integer from its bit length and leading 64
/// bits; never converts the whole value to floating point. Exact for powers
/// of two.
pub fn log2_biguint(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let leading = (value >> shift).iter_u64_digits().next().unwrap_or(0);
    (leading as f64).log2() + shift as f64
}

/// Natural logarithm, via [`log2_biguint`].
pub fn log_biguint(value: &BigUint) -> f64 {
    log2_biguint(value) * std::f64::consts::LN_2
}

/// Up to `samples` site counts spread evenly over `[2, n_max]`, always
/// including `n_max`.
pub fn sample_schedule(n_max: u32, samples: usize) -> Result<Vec<u32>> {
    if !(2..=CONVERGENCE_MAX_SITES).contains(&n_max) {
        return Err(Error::Range {
            what: "n_max",
            value: n_max.into(),
            range: format!("[2, {CONVERGENCE_MAX_SITES}]"),
        });
    }
    if samples == 0 {
        return Err(Error::Domain("at least one sample is required".into()));
    }
    if samples == 1 {
        return Ok(vec![n_max]);
    }
    let span = f64::from(n_max - 2);
    let mut ns: Vec<u32> = (0..samples)
        .map(|i| 2 + (span * i as f64 / (samples - 1) as f64).round() as u32)
        .collect();
    ns.dedup();
    Ok(ns)
}

/// Per-site ground-state count `S_n^{1/n}` and its distance to the dominant
/// root, at each requested `n` (returned in ascending order of `n`).
pub fn per_site_sequence(k: u32, ns: &[u32]) -> Result<Vec<ConvergencePoint>> {
    let reference = dominant_root(k, 1e-13)?;
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let Some(&n_max) = ns.last() else {
        return Ok(Vec::new());
    };
    if ns[0] < 2 || n_max > CONVERGENCE_MAX_SITES {
        return Err(Error::Range {
            what: "n",
            value: if ns[0] < 2 { ns[0] } else { n_max }.into(),
            range: format!("[2, {CONVERGENCE_MAX_SITES}]"),
        });
    }
    let counts = recurrence_sequence(k, n_max as usize)?;
    Ok(ns
        .iter()
        .map(|&n| {
            let per_site = (log2_biguint(&counts[n as usize]) / f64::from(n)).exp2();
            ConvergencePoint {
                n,
                per_site,
                gap: (per_site - reference).abs(),
            }
        })
        .collect())
}

/// `exp` of the least-squares slope of `ln S_n` against `n` over
/// `n_lo..=n_hi`: an estimate of the growth rate that does not use the
/// characteristic polynomial.
pub fn fitted_growth_rate(k: u32, n_lo: u32, n_hi: u32) -> Result<f64> {
    if n_lo >= n_hi || n_hi > CONVERGENCE_MAX_SITES {
        return Err(Error::Domain(format!(
            "fit range [{n_lo}, {n_hi}] must be increasing and within {CONVERGENCE_MAX_SITES}"
        )));
    }
    let counts = recurrence_sequence(k, n_hi as usize)?;
    let points: Vec<(f64, f64)> = (n_lo..=n_hi)
        .map(|n| (f64::from(n), log_biguint(&counts[n as usize])))
        .collect();
    let len = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / len;
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(x, y)| {
        (num + (x - mean_x) * (y - mean_y), den + (x - mean_x).powi(2))
    });
    Ok((num / den).exp())
}
