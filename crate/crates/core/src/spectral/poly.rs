use num_complex::Complex64;

use super::require_order;
use crate::error::Result;

/// `p(x) = x^k − x^{k−1} − … − x − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharPoly {
    k: u32,
}

impl CharPoly {
    pub fn new(k: u32) -> Result<Self> {
        require_order(k)?;
        Ok(Self { k })
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    /// Coefficients in descending degree: `[1, −1, …, −1]`.
    pub fn coefficients(&self) -> Vec<f64> {
        std::iter::once(1.0)
            .chain(std::iter::repeat(-1.0).take(self.k as usize))
            .collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        (0..self.k).fold(1.0, |acc, _| acc * x - 1.0)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        // d/dx of x^k − Σ_{j<k} x^j
        let mut value = 0.0;
        let mut slope = 0.0;
        for i in 0..=self.k {
            slope = slope * x + value;
            value = value * x + if i == 0 { 1.0 } else { -1.0 };
        }
        slope
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        (0..self.k).fold(Complex64::new(1.0, 0.0), |acc, _| acc * z - 1.0)
    }

    /// `(p(z), p′(z))` by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut value = Complex64::new(1.0, 0.0);
        let mut slope = Complex64::new(0.0, 0.0);
        for _ in 0..self.k {
            slope = slope * z + value;
            value = value * z - 1.0;
        }
        (value, slope)
    }

    /// `p(x)·(x − 1) = x^{k+1} − 2x^k + 1`.
    pub fn eval_auxiliary(&self, x: f64) -> f64 {
        x.powi(self.k as i32) * (x - 2.0) + 1.0
    }

    /// Upper bound on the rounding error of [`Self::eval_complex`] at `z`.
    pub(crate) fn rounding_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let magnitude = (0..self.k).fold(1.0, |acc, _| acc * r + 1.0);
        let k = f64::from(self.k);
        // Horner with complex multiply-adds: ≈ 2k ε per step, doubled for slack
        4.0 * (k + 1.0) * f64::EPSILON * magnitude
    }
}
