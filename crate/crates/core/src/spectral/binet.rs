use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, ToPrimitive};

use super::dominant_root;
use crate::degeneracy::count_recurrence;
use crate::error::{Error, Result};

/// Largest Fibonacci index accepted by [`binet_estimate`].
pub const BINET_MAX_INDEX: u32 = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct BinetEstimate {
    pub n: u32,
    /// `F_n` with `F_0 = F_1 = 1`.
    pub exact: BigUint,
    /// `φ^{n+1} / √5`.
    pub estimate: f64,
    pub relative_error: f64,
    /// Whether `estimate` rounded to the nearest integer equals `exact`.
    pub rounds_to_exact: bool,
}

/// Leading-term Binet approximation of the shifted Fibonacci number `F_n`.
///
/// With `F_0 = 1` the classical index is one higher, hence the exponent
/// `n + 1`. `φ` is taken from [`dominant_root`].
pub fn binet_estimate(n: u32) -> Result<BinetEstimate> {
    if n > BINET_MAX_INDEX {
        return Err(Error::Range {
            what: "n",
            value: n.into(),
            range: format!("[0, {BINET_MAX_INDEX}]"),
        });
    }
    let exact = match n {
        0 => BigUint::one(),
        _ => count_recurrence(n - 1, 2)?.count,
    };
    let phi = dominant_root(2, 1e-15)?;
    let estimate = phi.powi(n as i32 + 1) / 5f64.sqrt();
    let exact_f64 = exact.to_f64().unwrap_or(f64::INFINITY);
    if !estimate.is_finite() || !exact_f64.is_finite() {
        return Err(Error::Range {
            what: "n",
            value: n.into(),
            range: "values representable as f64".into(),
        });
    }
    let rounds_to_exact = BigUint::from_f64(estimate.round()).is_some_and(|r| r == exact);
    Ok(BinetEstimate {
        n,
        relative_error: (estimate - exact_f64).abs() / exact_f64,
        exact,
        estimate,
        rounds_to_exact,
    })
}
