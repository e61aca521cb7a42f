//! Quaternionic polynomials `P(q) = Σ q^n a_n` with coefficients on the right.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::quaternion::{orthogonal_unit, Quaternion, TwoSphere, UnitImaginary};
use crate::tolerances::Tolerances;
use crate::Real;

/// Dense right-coefficient polynomial, ascending degree.
///
/// The leading coefficient is nonzero unless the polynomial is zero, in which
/// case `coeffs` is empty. JSON form: `{"coeffs": [[w,x,y,z], ...]}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
#[serde(try_from = "RawPoly<T>")]
pub struct QPoly<T> {
    coeffs: Vec<Quaternion<T>>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>"))]
struct RawPoly<T> {
    coeffs: Vec<Quaternion<T>>,
}

impl<T: Real> TryFrom<RawPoly<T>> for QPoly<T> {
    type Error = Error;

    fn try_from(raw: RawPoly<T>) -> Result<Self> {
        if raw.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("non-finite coefficient"));
        }
        Ok(QPoly::new(raw.coeffs))
    }
}

impl<T: Real> QPoly<T> {
    /// Normalizes with the default relative trim threshold.
    pub fn new(coeffs: Vec<Quaternion<T>>) -> Self {
        Self::with_trim(coeffs, T::of(Tolerances::default().trim))
    }

    /// Drops trailing coefficients with norm `<= trim * max |a_n|`.
    pub fn with_trim(mut coeffs: Vec<Quaternion<T>>, trim: T) -> Self {
        let max = coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        let cut = trim * max;
        while let Some(c) = coeffs.last() {
            let n = c.norm();
            if n == T::zero() || n <= cut {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Quaternion<T>) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `q - α`.
    pub fn linear(alpha: Quaternion<T>) -> Self {
        Self::new(vec![-alpha, Quaternion::one()])
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Quaternion::real(c)).collect())
    }

    /// `Π (q - α_i)` under the star product, left to right.
    pub fn from_factors(alphas: &[Quaternion<T>]) -> Self {
        alphas
            .iter()
            .fold(Self::constant(Quaternion::one()), |acc, &a| acc.star_mul(&Self::linear(a)))
    }

    pub fn coeffs(&self) -> &[Quaternion<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Quaternion<T>> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Quaternion<T>> {
        self.coeffs.last().copied()
    }

    pub fn max_coeff_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// True when every coefficient has zero vector part.
    pub fn has_real_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.im_norm() == T::zero())
    }

    /// Real parts of the coefficients.
    pub fn real_parts(&self) -> Vec<T> {
        self.coeffs.iter().map(|c| c.w).collect()
    }

    /// Coefficient convolution `Σ_{s+k=n} a_s b_k`.
    pub fn star_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Quaternion::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (s, &a) in self.coeffs.iter().enumerate() {
            for (k, &b) in other.coeffs.iter().enumerate() {
                out[s + k] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Quaternion::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(zero)
                        + other.coeffs.get(i).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }

    /// Multiplies every coefficient by a real scalar.
    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `P^c`: coefficientwise conjugation.
    pub fn conjugate(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// `P^s = P * P^c`, as computed; imaginary parts are rounding noise only.
    pub fn symmetrize(&self) -> Self {
        self.star_mul(&self.conjugate())
    }

    /// Real coefficient vector of `P^s`, dropping the rounding-level imaginary parts.
    pub fn symmetrize_real(&self) -> Vec<T> {
        let m = self.coeffs.len();
        if m == 0 {
            return Vec::new();
        }
        let mut b = vec![T::zero(); 2 * m - 1];
        for (s, a) in self.coeffs.iter().enumerate() {
            for (r, c) in self.coeffs.iter().enumerate() {
                // Re(a_s conj(a_r)) = <a_s, a_r>
                b[s + r] += a.dot(*c);
            }
        }
        b
    }

    /// `P'(q) = Σ q^{n-1} n a_n`.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &a)| a * T::of(n as f64))
                .collect(),
        )
    }

    /// `Σ q^n a_n` with iteratively built powers, coefficients multiplied on the right.
    pub fn evaluate(&self, q: Quaternion<T>) -> Quaternion<T> {
        let mut power = Quaternion::one();
        let mut acc = Quaternion::zero();
        for (n, &a) in self.coeffs.iter().enumerate() {
            if n > 0 {
                power = power * q;
            }
            acc += power * a;
        }
        acc
    }

    /// `Σ |a_n| |q|^n`.
    pub fn abs_eval(&self, q: Quaternion<T>) -> T {
        let r = q.norm();
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    /// Residual scale `Σ |a_n| (1 + |q|)^n` used by every zero test.
    pub fn scale_at(&self, q: Quaternion<T>) -> T {
        let r = T::one() + q.norm();
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    /// Writes `P = (q - α) * Q + r` with constant remainder `r = P(α)`.
    pub fn left_divide_linear(&self, alpha: Quaternion<T>) -> Result<(Self, Quaternion<T>)> {
        let m = self
            .degree()
            .ok_or_else(|| Error::invalid("division of the zero polynomial"))?;
        if m == 0 {
            return Ok((Self::zero(), self.coeffs[0]));
        }
        // a_n = b_{n-1} - α b_n, solved from the top.
        let mut b = vec![Quaternion::zero(); m];
        b[m - 1] = self.coeffs[m];
        for n in (1..m).rev() {
            b[n - 1] = self.coeffs[n] + alpha * b[n];
        }
        let r = self.coeffs[0] + alpha * b[0];
        Ok((Self::new(b), r))
    }

    /// Exact division by a real-coefficient polynomial (which is central).
    /// Returns quotient and remainder.
    pub fn divide_real(&self, divisor: &[T]) -> Result<(Self, Self)> {
        let d = divisor.len().checked_sub(1).filter(|_| divisor.last() != Some(&T::zero()));
        let d = d.ok_or_else(|| Error::invalid("division by zero polynomial"))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = divisor[d];
        let mut quot = vec![Quaternion::zero(); rem.len() - d];
        for n in (0..quot.len()).rev() {
            let c = rem[n + d] / lead;
            quot[n] = c;
            for (i, &dv) in divisor.iter().enumerate() {
                rem[n + i] -= c * dv;
            }
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Splits `P|C(I)(z) = P1(z) + P2(z) J` with `J = orthogonal_unit(I)`.
    pub fn restrict_to_slice(&self, unit: UnitImaginary<T>) -> ComplexSlicePoly<T> {
        let ortho = orthogonal_unit(unit);
        let (i, j) = (unit.get(), ortho.get());
        let ij = i * j;
        let mut p1 = Vec::with_capacity(self.coeffs.len());
        let mut p2 = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            // {1, I, J, IJ} is an orthonormal real basis of H.
            p1.push(Complex::new(a.w, a.dot(i)));
            p2.push(Complex::new(a.dot(j), a.dot(ij)));
        }
        ComplexSlicePoly {
            unit,
            ortho,
            p1: CPoly::new(p1),
            p2: CPoly::new(p2),
        }
    }

    pub fn cast<U: Real>(&self) -> QPoly<U> {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| c.cast()).collect(),
        }
    }
}

/// `(P*Q)(q)` via the pointwise formula `P(q) Q(P(q)^{-1} q P(q))`, or 0 when `P(q)` vanishes.
pub fn pointwise_star_eval<T: Real>(
    p: &QPoly<T>,
    q: &QPoly<T>,
    at: Quaternion<T>,
    tol: &Tolerances,
) -> Quaternion<T> {
    let pv = p.evaluate(at);
    let threshold = T::of(tol.eval) * (T::one() + p.abs_eval(at));
    if pv.norm() <= threshold {
        return Quaternion::zero();
    }
    // pv is nonzero here
    let inv = pv.inv().expect("nonzero value");
    pv * q.evaluate(inv * at * pv)
}

/// `q^2 - 2x q + (x^2 + y^2)`: the real quadratic vanishing exactly on the sphere.
pub fn characteristic_poly<T: Real>(s: TwoSphere<T>) -> QPoly<T> {
    QPoly::from_real(&characteristic_coeffs(s))
}

pub(crate) fn characteristic_coeffs<T: Real>(s: TwoSphere<T>) -> [T; 3] {
    [s.x * s.x + s.y * s.y, -T::two() * s.x, T::one()]
}

/// Restriction of a quaternionic polynomial to a slice, `P1 + P2·J`.
///
/// Complex coefficients are coordinates against the basis `{1, I}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct ComplexSlicePoly<T> {
    pub unit: UnitImaginary<T>,
    pub ortho: UnitImaginary<T>,
    pub p1: CPoly<T>,
    pub p2: CPoly<T>,
}

impl<T: Real> ComplexSlicePoly<T> {
    /// `P1(z) + P2(z) J` for `z` given in `C(I)` coordinates.
    pub fn evaluate(&self, z: Complex<T>) -> Quaternion<T> {
        self.unit.embed_complex(self.p1.eval(z)) + self.unit.embed_complex(self.p2.eval(z)) * self.ortho.get()
    }

    pub fn derivative(&self) -> Self {
        Self {
            unit: self.unit,
            ortho: self.ortho,
            p1: self.p1.derivative(),
            p2: self.p2.derivative(),
        }
    }

    /// `Q(z) = P1(z) conj(P1(conj z)) + P2(z) conj(P2(conj z))`, which equals `P^s` on the slice.
    pub fn symmetrized(&self) -> CPoly<T> {
        self.p1.hermitian_square().add(&self.p2.hermitian_square())
    }
}
