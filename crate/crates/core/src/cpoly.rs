//! Dense complex-coefficient polynomials, ascending degree.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::Real;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CPoly<T> {
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Real> CPoly<T> {
    /// Keeps coefficients as given; use [`CPoly::trimmed`] to normalize.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    /// Drops trailing coefficients with modulus `<= rel * max |c|`.
    pub fn trimmed(mut self, rel: T) -> Self {
        let max = self.max_abs();
        let cut = max * rel;
        while let Some(c) = self.coeffs.last() {
            if c.norm() <= cut || c.norm() == T::zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == T::zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() != T::zero())
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
    }

    /// `Σ |c_n| |z|^n`, the magnitude a rounding-level residual is measured against.
    pub fn abs_eval(&self, z: Complex<T>) -> T {
        let r = z.norm();
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| c * T::of(n as f64))
                .collect(),
        )
    }

    /// `z ↦ conj(p(conj z))`: conjugates every coefficient.
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.coeffs.len() + other.coeffs.len() - 1];
        for (s, &a) in self.coeffs.iter().enumerate() {
            for (k, &b) in other.coeffs.iter().enumerate() {
                out[s + k] = out[s + k] + a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex::new(T::zero(), T::zero());
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(zero)
                        + other.coeffs.get(i).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }

    /// `p(z) · conj(p(conj z))`.
    pub fn hermitian_square(&self) -> Self {
        self.mul(&self.reflect())
    }

    /// Monic-free product `lead · Π (z - r)`.
    pub fn from_roots(lead: Complex<T>, roots: &[Complex<T>]) -> Self {
        let mut p = Self::new(vec![lead]);
        for &r in roots {
            p = p.mul(&Self::new(vec![-r, Complex::new(T::one(), T::zero())]));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eval_and_derivative() {
        // z^2 + 1
        let p = CPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(p.eval(c(0.0, 1.0)), c(0.0, 0.0));
        assert_eq!(p.derivative().coeffs, vec![c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn hermitian_square_is_real_and_nonnegative() {
        let p = CPoly::new(vec![c(0.3, -1.0), c(2.0, 0.5), c(-0.7, 1.1)]);
        let q = p.hermitian_square();
        for coeff in &q.coeffs {
            assert!(coeff.im.abs() < 1e-14);
        }
        for x in [-3.0, -0.2, 0.0, 1.7, 10.0] {
            let v = q.eval(c(x, 0.0));
            assert!(v.re >= 0.0 && v.im.abs() < 1e-9 * (1.0 + v.re));
            assert!((v.re - p.eval(c(x, 0.0)).norm_sqr()).abs() < 1e-9 * (1.0 + v.re));
        }
    }

    #[test]
    fn from_roots_matches_expansion() {
        let p = CPoly::from_roots(c(2.0, 0.0), &[c(0.0, 1.0), c(0.0, -1.0)]);
        assert_eq!(p.coeffs, vec![c(2.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
    }

    #[test]
    fn trimming_drops_small_leading_terms() {
        let p = CPoly::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1e-20, 0.0)]).trimmed(1e-12);
        assert_eq!(p.degree(), Some(1));
        assert!(CPoly::<f64>::zero().trimmed(1e-12).is_zero());
    }
}
