use super::{require_order, require_tolerance, CharPoly};
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 400;

/// The root of `p` in `(1, 2]`.
///
/// Bisection narrows the sign change on `[1, 2]`, then Newton steps polish
/// the estimate while the bracket is maintained; any step that would leave
/// the bracket is replaced by a bisection step. Returns once the Newton
/// correction `|p(r)/p′(r)|` is at most `tol`.
pub fn dominant_root(k: u32, tol: f64) -> Result<f64> {
    require_order(k)?;
    require_tolerance(tol)?;
    let p = CharPoly::new(k)?;

    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    // coarse bracket first so Newton starts in its basin
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if p.eval(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERATIONS {
        let value = p.eval(x);
        if value == 0.0 {
            return Ok(x);
        }
        if value > 0.0 {
            hi = hi.min(x);
        } else {
            lo = lo.max(x);
        }
        let slope = p.derivative(x);
        let step = value / slope;
        if step.abs() <= tol {
            // one more correction is free and lands at machine precision
            let polished = x - step;
            return Ok(if (lo..=hi).contains(&polished) { polished } else { x });
        }
        let candidate = x - step;
        x = if slope.is_finite() && candidate > lo && candidate < hi {
            candidate
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * hi {
            return Ok(x);
        }
    }
    Err(Error::Numeric(format!(
        "dominant root of order {k} did not converge; last bracket [{lo:e}, {hi:e}]"
    )))
}
