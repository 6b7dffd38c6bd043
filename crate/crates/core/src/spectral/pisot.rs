use num_complex::Complex64;

use super::{all_roots, dominant_root};
use crate::error::{Error, Result};

/// Dominant root, its conjugates and the error-aware Pisot verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct PisotReport {
    pub k: u32,
    pub dominant_root: f64,
    pub conjugates: Vec<Complex64>,
    pub max_conjugate_modulus: f64,
    pub root_error_bound: f64,
    /// Number of roots (dominant included) with modulus above 1.
    pub roots_outside_unit_disk: usize,
    pub is_pisot: bool,
}

/// Pisot check for the order-`k` characteristic polynomial.
///
/// The dominant root comes from the bracketed search; the conjugates are the
/// all-roots output minus the entry matching it. The two routes must agree
/// to within the inclusion radius plus `tol`, otherwise a numeric error is
/// returned.
pub fn pisot_check(k: u32, tol: f64) -> Result<PisotReport> {
    let set = all_roots(k, tol)?;
    let dominant = dominant_root(k, tol)?;

    let (position, distance) = set
        .roots
        .iter()
        .enumerate()
        .map(|(i, z)| (i, (z - Complex64::new(dominant, 0.0)).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least two roots");
    if distance > set.error_bound + tol {
        return Err(Error::Numeric(format!(
            "bracketed root {dominant} and simultaneous iteration disagree by {distance:e} for order {k}"
        )));
    }

    let conjugates: Vec<Complex64> = set
        .roots
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != position)
        .map(|(_, z)| *z)
        .collect();
    let max_conjugate_modulus = conjugates.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let roots_outside_unit_disk = set.roots.iter().filter(|z| z.norm() > 1.0).count();
    let is_pisot = dominant > 1.0 && max_conjugate_modulus + set.error_bound < 1.0;

    Ok(PisotReport {
        k,
        dominant_root: dominant,
        conjugates,
        max_conjugate_modulus,
        root_error_bound: set.error_bound,
        roots_outside_unit_disk,
        is_pisot,
    })
}
