//! Zero sets of quaternionic polynomials: isolated points and whole spheres.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{characteristic_coeffs, QPoly};
use crate::quaternion::{fibonacci_units, Quaternion, TwoSphere, UnitImaginary};
use crate::roots::complex::{real_poly_roots, RootCluster};
use crate::tolerances::Tolerances;
use crate::Real;

/// Number of slice units a spherical zero is spot-checked on.
const SPHERE_RESIDUAL_SAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct IsolatedZero<T> {
    pub q: Quaternion<T>,
    pub mult: usize,
    pub residual: T,
}

/// A whole sphere `[x + I y]` of zeros, `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalZero<T> {
    pub x: T,
    pub y: T,
    pub mult: usize,
    pub residual: T,
}

impl<T: Real> SphericalZero<T> {
    pub fn sphere(&self) -> TwoSphere<T> {
        TwoSphere { x: self.x, y: self.y }
    }
}

/// Classified zeros. Real zeros live in `isolated` with zero vector part.
///
/// `residual` fields are `|P(q)| / scale(P, q)`; for spheres the maximum over
/// a few representatives.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct ZeroSet<T> {
    pub isolated: Vec<IsolatedZero<T>>,
    pub spheres: Vec<SphericalZero<T>>,
}

impl<T: Real> ZeroSet<T> {
    pub fn empty() -> Self {
        Self {
            isolated: Vec::new(),
            spheres: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.isolated.is_empty() && self.spheres.is_empty()
    }

    /// Isolated multiplicities plus twice the sphere multiplicities.
    pub fn count(&self) -> usize {
        self.isolated.iter().map(|z| z.mult).sum::<usize>()
            + 2 * self.spheres.iter().map(|s| s.mult).sum::<usize>()
    }

    /// True when every isolated zero is real, so the set is a union of
    /// spheres and real points and is invariant under rotations of `Im H`.
    pub fn is_rotation_invariant(&self, tol: T) -> bool {
        self.isolated.iter().all(|z| z.q.im_norm() <= tol)
    }

    pub fn max_modulus(&self) -> Option<T> {
        let iso = self.isolated.iter().map(|z| z.q.norm());
        let sph = self.spheres.iter().map(|s| s.sphere().modulus());
        iso.chain(sph).fold(None, |m, v| Some(m.map_or(v, |m: T| m.max(v))))
    }

    /// Representatives of the set inside the slice `C(I)`: every isolated
    /// zero as is, and both points `x ± I y` of every sphere.
    pub fn slice_points(&self, unit: UnitImaginary<T>) -> Vec<Quaternion<T>> {
        let mut out: Vec<_> = self.isolated.iter().map(|z| z.q).collect();
        for s in &self.spheres {
            out.push(unit.embed(s.x, s.y));
            out.push(unit.embed(s.x, -s.y));
        }
        out
    }

    /// Isolated zeros plus `per_sphere` Fibonacci samples of every sphere.
    pub fn sampled_points(&self, per_sphere: usize) -> Vec<Quaternion<T>> {
        let mut out: Vec<_> = self.isolated.iter().map(|z| z.q).collect();
        if !self.spheres.is_empty() {
            let units = fibonacci_units::<T>(per_sphere);
            for s in &self.spheres {
                out.extend(units.iter().map(|u| u.embed(s.x, s.y)));
            }
        }
        out
    }

    fn sort(&mut self) {
        let key = |q: &Quaternion<T>| q.to_array();
        self.isolated.sort_by(|a, b| {
            key(&a.q)
                .iter()
                .zip(key(&b.q).iter())
                .map(|(x, y)| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        self.spheres.sort_by(|a, b| {
            a.x.partial_cmp(&b.x)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.y.partial_cmp(&b.y).unwrap_or(std::cmp::Ordering::Equal))
        });
    }
}

/// Outcome of testing one candidate sphere against `P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SphereClass<T> {
    /// Every point of the sphere is a zero.
    Spherical,
    /// Exactly this point of the sphere is a zero.
    Isolated(Quaternion<T>),
    NotAZero,
}

/// `|P(q)| / scale(P, q)`.
pub fn relative_residual<T: Real>(p: &QPoly<T>, q: Quaternion<T>) -> T {
    let s = p.scale_at(q);
    if s == T::zero() {
        T::zero()
    } else {
        p.evaluate(q).norm() / s
    }
}

fn sphere_residual<T: Real>(p: &QPoly<T>, s: TwoSphere<T>) -> T {
    fibonacci_units::<T>(SPHERE_RESIDUAL_SAMPLES)
        .into_iter()
        .map(|u| relative_residual(p, u.embed(s.x, s.y)))
        .fold(T::zero(), T::max)
}

/// Decides how the sphere `s` meets the zero set of `P`.
///
/// On the sphere, `P(x + K y) = a + K b` for every unit `K`, with `a` and `b`
/// recovered from the two evaluations at `x ± I y`.
pub fn classify_sphere<T: Real>(p: &QPoly<T>, s: TwoSphere<T>, tol: &Tolerances) -> SphereClass<T> {
    let zero_tol = T::of(tol.zero);
    if s.y == T::zero() {
        let q = Quaternion::real(s.x);
        return if relative_residual(p, q) <= zero_tol {
            SphereClass::Isolated(q)
        } else {
            SphereClass::NotAZero
        };
    }
    let unit = UnitImaginary::<T>::i();
    let i = unit.get();
    let plus = unit.embed(s.x, s.y);
    let minus = unit.embed(s.x, -s.y);
    let va = p.evaluate(plus);
    let vb = p.evaluate(minus);
    let a = (va + vb) * T::half();
    let b = i * (vb - va) * T::half();
    let scale = p.scale_at(plus);
    if a.norm() <= zero_tol * scale && b.norm() <= zero_tol * scale {
        return SphereClass::Spherical;
    }
    let Ok(b_inv) = b.inv() else {
        return SphereClass::NotAZero;
    };
    let k = -(a * b_inv);
    let unit_tol = T::of(tol.classify);
    if k.w.abs() > unit_tol || (k.norm() - T::one()).abs() > unit_tol {
        return SphereClass::NotAZero;
    }
    let Ok(k) = UnitImaginary::normalize(k) else {
        return SphereClass::NotAZero;
    };
    let q = k.embed(s.x, s.y);
    if relative_residual(p, q) <= zero_tol {
        SphereClass::Isolated(q)
    } else {
        SphereClass::NotAZero
    }
}

/// The zero set of `P`, read off the roots of `P^s`.
///
/// Real-coefficient input takes a shortcut: its zeros are the real roots and
/// the spheres through the complex roots of `P` itself.
pub fn zero_set<T: Real>(p: &QPoly<T>, tol: &Tolerances) -> Result<ZeroSet<T>> {
    let degree = match p.degree() {
        None => return Err(Error::invalid("the zero polynomial has no finite zero set")),
        Some(0) => return Err(Error::invalid("a nonzero constant has no zeros to classify")),
        Some(d) => d,
    };
    let zs = if p.has_real_coeffs() {
        real_zero_set(&p.real_parts(), tol)?
    } else {
        general_zero_set(p, tol)?
    };

    if zs.count() != degree {
        return Err(Error::breakdown(
            "zero_set",
            format!("zero count {} does not match degree {degree}", zs.count()),
        ));
    }
    let limit = T::of(tol.zero);
    for z in &zs.isolated {
        if !(z.residual <= limit) {
            return Err(Error::breakdown(
                "zero_set",
                format!("isolated zero {} has residual {:e}", z.q, z.residual),
            ));
        }
    }
    for s in &zs.spheres {
        if !(s.residual <= limit) {
            return Err(Error::breakdown(
                "zero_set",
                format!("sphere ({}, {}) has residual {:e}", s.x, s.y, s.residual),
            ));
        }
    }
    Ok(zs)
}

/// Zero set of a real-coefficient polynomial: real points and spheres,
/// multiplicities taken straight from the complex roots.
pub fn real_zero_set<T: Real>(coeffs: &[T], tol: &Tolerances) -> Result<ZeroSet<T>> {
    let p = QPoly::from_real(coeffs);
    let roots = real_poly_roots(coeffs, tol)?;
    let mut zs = ZeroSet::empty();
    for r in roots {
        if r.center.im == T::zero() {
            let q = Quaternion::real(r.center.re);
            zs.isolated.push(IsolatedZero {
                q,
                mult: r.multiplicity,
                residual: relative_residual(&p, q),
            });
        } else if r.center.im > T::zero() {
            let s = TwoSphere::new(r.center.re, r.center.im);
            zs.spheres.push(SphericalZero {
                x: s.x,
                y: s.y,
                mult: r.multiplicity,
                residual: sphere_residual(&p, s),
            });
        }
    }
    zs.sort();
    Ok(zs)
}

/// Zero set of `P^s` viewed as real points and spheres.
pub fn symmetrization_zero_set<T: Real>(p: &QPoly<T>, tol: &Tolerances) -> Result<ZeroSet<T>> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::invalid("symmetrization zero set needs degree >= 1"));
    }
    real_zero_set(&p.symmetrize_real(), tol)
}

fn general_zero_set<T: Real>(p: &QPoly<T>, tol: &Tolerances) -> Result<ZeroSet<T>> {
    let roots = real_poly_roots(&p.symmetrize_real(), tol)?;
    let mut zs = ZeroSet::empty();
    for r in roots.iter().filter(|r| r.center.im >= T::zero()) {
        if r.center.im == T::zero() {
            classify_real_root(p, r, &mut zs, tol)?;
        } else {
            classify_upper_root(p, r, &mut zs, tol)?;
        }
    }
    zs.sort();
    Ok(zs)
}

fn classify_real_root<T: Real>(
    p: &QPoly<T>,
    r: &RootCluster<T>,
    zs: &mut ZeroSet<T>,
    tol: &Tolerances,
) -> Result<()> {
    // A real zero of multiplicity ν appears in P^s with multiplicity 2ν.
    if r.multiplicity % 2 != 0 {
        return Err(Error::breakdown(
            "zero_set",
            format!(
                "real root {} of the symmetrization has odd multiplicity {}",
                r.center.re, r.multiplicity
            ),
        ));
    }
    let s = TwoSphere::new(r.center.re, T::zero());
    match classify_sphere(p, s, tol) {
        SphereClass::Isolated(q) => {
            zs.isolated.push(IsolatedZero {
                q,
                mult: r.multiplicity / 2,
                residual: relative_residual(p, q),
            });
            Ok(())
        }
        _ => Err(Error::breakdown(
            "zero_set",
            format!(
                "real root {} of the symmetrization is not a zero (residual {:e})",
                r.center.re,
                relative_residual(p, Quaternion::real(r.center.re))
            ),
        )),
    }
}

fn classify_upper_root<T: Real>(
    p: &QPoly<T>,
    r: &RootCluster<T>,
    zs: &mut ZeroSet<T>,
    tol: &Tolerances,
) -> Result<()> {
    let s = TwoSphere::new(r.center.re, r.center.im);
    let char_coeffs = characteristic_coeffs(s);
    let mut current = p.clone();
    let mut remaining = r.multiplicity;
    let mut sphere_mult = 0;
    while remaining > 0 {
        match classify_sphere(&current, s, tol) {
            SphereClass::Spherical if remaining >= 2 => {
                // the characteristic quadratic divides P; peel it off and look again
                let (quot, _) = current.divide_real(&char_coeffs)?;
                current = quot;
                sphere_mult += 1;
                remaining -= 2;
            }
            SphereClass::Isolated(q) => {
                zs.isolated.push(IsolatedZero {
                    q,
                    mult: remaining,
                    residual: relative_residual(p, q),
                });
                remaining = 0;
            }
            other => {
                return Err(Error::breakdown(
                    "zero_set",
                    format!(
                        "sphere ({}, {}) with multiplicity {} left {remaining} unexplained ({})",
                        s.x,
                        s.y,
                        r.multiplicity,
                        match other {
                            SphereClass::Spherical => "spherical with odd remainder",
                            _ => "no unit K solves P(x + K y) = 0",
                        }
                    ),
                ));
            }
        }
    }
    if sphere_mult > 0 {
        zs.spheres.push(SphericalZero {
            x: s.x,
            y: s.y,
            mult: sphere_mult,
            residual: sphere_residual(p, s),
        });
    }
    Ok(())
}

/// Zeros of `P'`. Linear input has no critical points.
pub fn critical_points<T: Real>(p: &QPoly<T>, tol: &Tolerances) -> Result<ZeroSet<T>> {
    match p.degree() {
        None | Some(0) => Err(Error::invalid("critical points need degree >= 1")),
        Some(1) => Ok(ZeroSet::empty()),
        Some(_) => zero_set(&p.derivative(), tol),
    }
}

/// A slice unit containing `q`, falling back to `i` for real `q`.
pub fn slice_unit_of<T: Real>(q: Quaternion<T>, tol: &Tolerances) -> UnitImaginary<T> {
    crate::quaternion::imag_unit(q, tol).unwrap_or_else(|_| UnitImaginary::i())
}
