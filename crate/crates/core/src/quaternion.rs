//! Quaternion arithmetic, slices `C(I)` and the 2-spheres `[α]`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;
use crate::Real;

/// An element `w + x i + y j + z k` of the quaternion algebra.
///
/// Serialized as the JSON array `[w, x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[T; 4]", into = "[T; 4]")]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> From<[T; 4]> for Quaternion<T> {
    fn from(c: [T; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl<T: Real> From<Quaternion<T>> for [T; 4] {
    fn from(q: Quaternion<T>) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl<T: Real> Quaternion<T> {
    #[inline]
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::real(T::zero())
    }

    #[inline]
    pub fn one() -> Self {
        Self::real(T::one())
    }

    #[inline]
    pub fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    #[inline]
    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    #[inline]
    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Pure imaginary quaternion with vector part `v`.
    #[inline]
    pub fn pure(v: [T; 3]) -> Self {
        Self::new(T::zero(), v[0], v[1], v[2])
    }

    #[inline]
    pub fn to_array(self) -> [T; 4] {
        self.into()
    }

    /// Real (scalar) part.
    #[inline]
    pub fn re(self) -> T {
        self.w
    }

    /// Imaginary (vector) part as a quaternion with zero scalar part.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(T::zero(), self.x, self.y, self.z)
    }

    #[inline]
    pub fn vector(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Norm of the vector part, `|Im(q)|`.
    #[inline]
    pub fn im_norm(self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Euclidean inner product on `R^4`.
    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `conj(q) / |q|^2`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == T::zero() || !n2.is_finite() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj().scale(T::one() / n2))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Integer power by repeated multiplication.
    pub fn powi(self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// Casts every component to another scalar type.
    pub fn cast<U: Real>(self) -> Quaternion<U> {
        Quaternion::new(
            U::of(self.w.to_f64_lossy()),
            U::of(self.x.to_f64_lossy()),
            U::of(self.y.to_f64_lossy()),
            U::of(self.z.to_f64_lossy()),
        )
    }
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl<T: Real> AddAssign for Quaternion<T> {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl<T: Real> SubAssign for Quaternion<T> {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product: `ij = k`, `jk = i`, `ki = j`.
impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        Self {
            w: a * e - b * f - c * g - d * h,
            x: a * f + b * e + c * h - d * g,
            y: a * g - b * h + c * e + d * f,
            z: a * h + b * g - c * f + d * e,
        }
    }
}

impl<T: Real> MulAssign for Quaternion<T> {
    #[inline]
    fn mul_assign(&mut self, r: Self) {
        *self = *self * r;
    }
}

impl<T: Real> Mul<T> for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Real> Div<T> for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        self.scale(T::one() / s)
    }
}

impl<T: Real> fmt::Display for Quaternion<T> {
    /// `w + x i + y j + z k` with six significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = |v: T| format_sig(v.to_f64_lossy(), 6);
        write!(
            f,
            "{} + {} i + {} j + {} k",
            g(self.w),
            g(self.x),
            g(self.y),
            g(self.z)
        )
    }
}

/// Formats `v` with `digits` significant digits, trimming trailing zeros.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..=9).contains(&exp) {
        let s = format!("{:.*e}", digits.saturating_sub(1), v);
        return match s.split_once('e') {
            Some((m, e)) if m.contains('.') => {
                format!("{}e{}", m.trim_end_matches('0').trim_end_matches('.'), e)
            }
            _ => s,
        };
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, v);
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// A unit imaginary quaternion `I`, so that `I^2 = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct UnitImaginary<T>(Quaternion<T>);

impl<T: Real> UnitImaginary<T> {
    pub fn i() -> Self {
        Self(Quaternion::i())
    }

    pub fn j() -> Self {
        Self(Quaternion::j())
    }

    pub fn k() -> Self {
        Self(Quaternion::k())
    }

    /// Validates `q` against the unit tolerance without renormalizing.
    pub fn new(q: Quaternion<T>, tol: T) -> Result<Self> {
        let n = q.norm();
        if q.w.abs() > tol || (n - T::one()).abs() > tol {
            return Err(Error::invalid(format!(
                "not a unit imaginary quaternion: {q} (norm {})",
                n.to_f64_lossy()
            )));
        }
        Ok(Self(q))
    }

    /// Drops the scalar part and rescales the vector part to unit length.
    pub fn normalize(q: Quaternion<T>) -> Result<Self> {
        let n = q.im_norm();
        if n == T::zero() || !n.is_finite() {
            return Err(Error::AmbiguousSlice(q.w.to_f64_lossy()));
        }
        Ok(Self(q.im() / n))
    }

    /// Unit vector `v / |v|` in imaginary space.
    pub fn from_vector(v: [T; 3]) -> Result<Self> {
        Self::normalize(Quaternion::pure(v))
    }

    #[inline]
    pub fn get(self) -> Quaternion<T> {
        self.0
    }

    /// The point `x + I y` of the slice `C(I)`.
    #[inline]
    pub fn embed(self, x: T, y: T) -> Quaternion<T> {
        Quaternion::new(x, self.0.x * y, self.0.y * y, self.0.z * y)
    }

    /// Embeds a complex number `re + im·I` into `C(I)`.
    #[inline]
    pub fn embed_complex(self, z: Complex<T>) -> Quaternion<T> {
        self.embed(z.re, z.im)
    }

    /// Coordinates of `q` against the basis `{1, I}`; exact only when `q ∈ C(I)`.
    #[inline]
    pub fn project(self, q: Quaternion<T>) -> Complex<T> {
        Complex::new(q.w, self.0.dot(q))
    }
}

/// Imaginary unit `I_q = Im(q)/|Im(q)|` of the slice containing `q`.
pub fn imag_unit<T: Real>(q: Quaternion<T>, tol: &Tolerances) -> Result<UnitImaginary<T>> {
    if q.im_norm() <= T::of(tol.unit) {
        return Err(Error::AmbiguousSlice(q.w.to_f64_lossy()));
    }
    UnitImaginary::normalize(q)
}

/// The 2-sphere `{x + I y : I ∈ S^2}`; `y = 0` is the real point `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSphere<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> TwoSphere<T> {
    /// Panics on `y < 0`.
    pub fn new(x: T, y: T) -> Self {
        assert!(y >= T::zero(), "sphere radius must be nonnegative");
        Self { x, y }
    }

    #[inline]
    pub fn is_real_point(self) -> bool {
        self.y == T::zero()
    }

    /// Representative of the sphere on the slice `C(I)`.
    #[inline]
    pub fn point_on(self, unit: UnitImaginary<T>) -> Quaternion<T> {
        unit.embed(self.x, self.y)
    }

    pub fn contains(self, q: Quaternion<T>, tol: T) -> bool {
        (q.w - self.x).abs() <= tol && (q.im_norm() - self.y).abs() <= tol
    }

    /// Modulus shared by every point of the sphere.
    #[inline]
    pub fn modulus(self) -> T {
        self.x.hypot(self.y)
    }
}

pub fn sphere_of<T: Real>(q: Quaternion<T>) -> TwoSphere<T> {
    TwoSphere {
        x: q.w,
        y: q.im_norm(),
    }
}

pub fn same_sphere<T: Real>(p: Quaternion<T>, q: Quaternion<T>, tol: &Tolerances) -> bool {
    let t = T::of(tol.sphere);
    (p.w - q.w).abs() <= t && (p.im_norm() - q.im_norm()).abs() <= t
}

/// Deterministic unit `J ⊥ I`: Gram–Schmidt of the first of `i, j, k` that is
/// not nearly parallel to `I`.
pub fn orthogonal_unit<T: Real>(unit: UnitImaginary<T>) -> UnitImaginary<T> {
    let reject = T::one() - T::of(1e-6);
    let u = unit.get();
    for e in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
        let c = u.dot(e);
        if c.abs() > reject {
            continue;
        }
        let v = e - u.scale(c);
        return UnitImaginary(v.im() / v.im_norm());
    }
    unreachable!("a unit vector cannot be parallel to all of i, j, k")
}

/// `n` deterministic, nearly uniform units on `S^2` (Fibonacci lattice).
pub fn fibonacci_units<T: Real>(n: usize) -> Vec<UnitImaginary<T>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * k as f64;
            let v = [r * phi.cos(), r * phi.sin(), z];
            UnitImaginary::from_vector(v.map(T::of)).expect("nonzero lattice point")
        })
        .collect()
}
