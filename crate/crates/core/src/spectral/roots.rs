use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{require_order, require_tolerance, CharPoly};
use crate::error::{Error, Result};

/// Largest order for which roots are computed in double precision.
pub const ROOTS_MAX_ORDER: u32 = 32;

const MAX_ITERATIONS: usize = 1000;
const POLISH_STEPS: usize = 3;

/// All `k` roots of the characteristic polynomial with error bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub k: u32,
    /// Sorted by decreasing modulus, then decreasing imaginary part.
    pub roots: Vec<Complex64>,
    /// `|p(z)|` at each root, in the same order.
    pub residuals: Vec<f64>,
    pub min_separation: f64,
    /// Every exact root lies within this distance of exactly one entry of
    /// `roots`.
    pub error_bound: f64,
    pub iterations: usize,
}

impl RootSet {
    pub fn sum(&self) -> Complex64 {
        self.roots.iter().sum()
    }

    pub fn product(&self) -> Complex64 {
        self.roots.iter().product()
    }
}

/// Roots of `p` by Aberth–Ehrlich simultaneous iteration.
///
/// Starting points sit on a circle around the root centroid `1/k` with a
/// random phase and small radial jitter (seeded per `k`, so results are
/// reproducible). After convergence each root is polished with Newton steps.
///
/// The error bound comes from the Weierstrass corrections
/// `W_i = p(z_i) / Π_{j≠i}(z_i − z_j)`: the disks `|z − z_i| ≤ k·|W_i|`
/// cover all roots, and when they are pairwise disjoint each holds exactly
/// one. Residuals are inflated by a rounding bound on the evaluation.
pub fn all_roots(k: u32, tol: f64) -> Result<RootSet> {
    require_order(k)?;
    require_tolerance(tol)?;
    if k > ROOTS_MAX_ORDER {
        return Err(Error::Capacity {
            method: "all_roots",
            cap: format!("k <= {ROOTS_MAX_ORDER}"),
            requested: format!("k = {k}"),
            hint: "conjugate roots crowd the unit circle beyond double precision",
        });
    }
    let p = CharPoly::new(k)?;
    let degree = k as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + u64::from(k));
    let phase = rng.gen_range(0.0..TAU);
    let center = Complex64::new(1.0 / f64::from(k), 0.0);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|j| {
            let radius = 1.1 + rng.gen_range(0.0..0.1);
            let angle = phase + TAU * j as f64 / degree as f64;
            center + Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut largest_step = 0.0_f64;
        for i in 0..degree {
            let (value, slope) = p.eval_with_derivative(z[i]);
            if value == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = value / slope;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.is_finite() {
                return Err(Error::Numeric(format!(
                    "Aberth step became non-finite for order {k}"
                )));
            }
            z[i] -= step;
            largest_step = largest_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if largest_step <= tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!(
            "Aberth iteration for order {k} did not converge in {MAX_ITERATIONS} sweeps"
        )));
    }

    for root in z.iter_mut() {
        for _ in 0..POLISH_STEPS {
            let (value, slope) = p.eval_with_derivative(*root);
            let step = value / slope;
            if !step.is_finite() || step.norm() == 0.0 {
                break;
            }
            *root -= step;
        }
    }

    z.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then_with(|| b.im.total_cmp(&a.im))
    });

    let mut min_separation = f64::INFINITY;
    for i in 0..degree {
        for j in i + 1..degree {
            min_separation = min_separation.min((z[i] - z[j]).norm());
        }
    }
    if min_separation < tol {
        return Err(Error::Numeric(format!(
            "two root approximations of order {k} collapsed (separation {min_separation:e})"
        )));
    }

    let residuals: Vec<f64> = z.iter().map(|&r| p.eval_complex(r).norm()).collect();
    let mut error_bound = 0.0_f64;
    for i in 0..degree {
        let denominator: Complex64 = (0..degree)
            .filter(|&j| j != i)
            .map(|j| z[i] - z[j])
            .product();
        let residual = residuals[i] + p.rounding_bound(z[i]);
        error_bound = error_bound.max(f64::from(k) * residual / denominator.norm());
    }
    if !(2.0 * error_bound < min_separation) {
        return Err(Error::Numeric(format!(
            "inclusion disks of order {k} overlap (radius {error_bound:e}, separation {min_separation:e})"
        )));
    }

    Ok(RootSet {
        k,
        roots: z,
        residuals,
        min_separation,
        error_bound,
        iterations,
    })
}
