//! Growth rate of the ground-state count.
//!
//! The k-step recurrence has characteristic polynomial
//! `p(x) = x^k − x^{k−1} − … − x − 1`. Its unique root in `(1, 2)` is the
//! asymptotic number of ground states per site, and every other root lies
//! strictly inside the unit circle, which makes that root a Pisot number.
//!
//! Two independent routes find the dominant root: a bracketed search on
//! `[1, 2]` ([`dominant_root`]) and a simultaneous all-roots iteration
//! ([`all_roots`]). [`pisot_check`] requires them to agree.

mod binet;
mod convergence;
mod dominant;
mod pisot;
mod poly;
mod roots;

pub use binet::{binet_estimate, BinetEstimate, BINET_MAX_INDEX};
pub use convergence::{
    fitted_growth_rate, log2_biguint, log_biguint, per_site_sequence, sample_schedule, ConvergencePoint,
    CONVERGENCE_MAX_SITES,
};
pub use dominant::dominant_root;
pub use pisot::{pisot_check, PisotReport};
pub use poly::CharPoly;
pub use roots::{all_roots, RootSet, ROOTS_MAX_ORDER};

use crate::error::{Error, Result};

pub(crate) fn require_order(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "characteristic polynomial order k must be at least 2, got {k}"
        )));
    }
    Ok(())
}

pub(crate) fn require_tolerance(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::Domain(format!(
            "tolerance must lie in (0, 1e-6], got {tol}"
        )));
    }
    Ok(())
}
