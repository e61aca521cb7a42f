//! Factorization `Q(z) = M(z)·conj(M(conj z))` of a real polynomial that is
//! nonnegative on the real line, and the identities relating `M` to the slice
//! components of a quaternionic polynomial.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::roots::complex::real_poly_roots;
use crate::tolerances::Tolerances;
use crate::Real;

/// Relative tolerance of [`check_l_identity`].
pub const L_IDENTITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct MFactor<T> {
    pub m_coeffs: Vec<Complex<T>>,
    /// Largest coefficient of `Q - M·M*`.
    pub residual: T,
}

impl<T: Real> MFactor<T> {
    pub fn poly(&self) -> CPoly<T> {
        CPoly::new(self.m_coeffs.clone())
    }
}

/// Factors `Q` by root splitting: one root from each conjugate pair (the one
/// in the upper half-plane), half of every real root, leading coefficient
/// `√lead(Q)`.
pub fn fejer_riesz_factor<T: Real>(q: &CPoly<T>, tol: &Tolerances) -> Result<MFactor<T>> {
    let q = q.clone().trimmed(T::of(tol.trim));
    let Some(degree) = q.degree() else {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    };
    let size = q.max_abs();
    if q.coeffs.iter().any(|c| c.im.abs() > T::of(tol.factor) * (T::one() + size)) {
        return Err(Error::invalid("factorization needs real coefficients"));
    }
    if degree % 2 != 0 {
        return Err(Error::NotNonnegative(format!("odd degree {degree}")));
    }
    let real: Vec<T> = q.coeffs.iter().map(|c| c.re).collect();
    let lead = real[degree];
    if lead <= T::zero() {
        return Err(Error::NotNonnegative(format!("leading coefficient {lead}")));
    }

    let mut roots = Vec::with_capacity(degree / 2);
    if degree > 0 {
        for r in real_poly_roots(&real, tol)? {
            if r.center.im > T::zero() {
                roots.extend(std::iter::repeat_n(r.center, r.multiplicity));
            } else if r.center.im == T::zero() {
                if r.multiplicity % 2 != 0 {
                    return Err(Error::NotNonnegative(format!(
                        "real root {} has odd multiplicity {}",
                        r.center.re, r.multiplicity
                    )));
                }
                roots.extend(std::iter::repeat_n(r.center, r.multiplicity / 2));
            }
        }
    }
    if roots.len() * 2 != degree {
        return Err(Error::breakdown(
            "fejer_riesz_factor",
            format!("split {} roots out of degree {degree}", roots.len()),
        ));
    }

    let m = CPoly::from_roots(Complex::new(lead.sqrt(), T::zero()), &roots);
    let diff = q.add(&neg(&m.hermitian_square()));
    let residual = diff.max_abs();
    if !(residual <= T::of(tol.factor) * (T::one() + size)) {
        return Err(Error::breakdown(
            "fejer_riesz_factor",
            format!("factor residual {residual:e}"),
        ));
    }
    Ok(MFactor {
        m_coeffs: m.coeffs,
        residual,
    })
}

fn neg<T: Real>(p: &CPoly<T>) -> CPoly<T> {
    CPoly::new(p.coeffs.iter().map(|&c| -c).collect())
}

/// `L(z) = P1'(z) conj(P1(conj z)) + P2'(z) conj(P2(conj z))`.
pub fn l_poly<T: Real>(p1: &CPoly<T>, p2: &CPoly<T>) -> CPoly<T> {
    p1.derivative()
        .mul(&p1.reflect())
        .add(&p2.derivative().mul(&p2.reflect()))
}

/// Worst relative residual of `z L(z) = z M'(z) conj(M(conj z))` over `samples`.
pub fn l_identity_residual<T: Real>(p1: &CPoly<T>, p2: &CPoly<T>, m: &MFactor<T>, samples: &[Complex<T>]) -> T {
    let l = l_poly(p1, p2);
    let mp = m.poly();
    let rhs = mp.derivative().mul(&mp.reflect());
    samples
        .iter()
        .map(|&z| {
            let a = z * l.eval(z);
            let b = z * rhs.eval(z);
            let scale = z.norm() * (l.abs_eval(z) + rhs.abs_eval(z));
            if scale == T::zero() {
                (a - b).norm()
            } else {
                (a - b).norm() / scale
            }
        })
        .fold(T::zero(), T::max)
}

/// Tests `z L(z) = z M'(z) conj(M(conj z))` at every sample within
/// [`L_IDENTITY_TOL`]. The identity holds only when the `J` component is
/// absent and `M` equals `P1` up to a unimodular constant, so this is
/// expected to fail for general input.
pub fn check_l_identity<T: Real>(p1: &CPoly<T>, p2: &CPoly<T>, m: &MFactor<T>, samples: &[Complex<T>]) -> bool {
    l_identity_residual(p1, p2, m, samples) <= T::of(L_IDENTITY_TOL)
}

/// Worst relative residual of `L + L* = M' M* + (M' M*)*` over `samples`,
/// both sides being `Q'` whenever `Q = M M*`.
pub fn symmetric_l_identity_residual<T: Real>(
    p1: &CPoly<T>,
    p2: &CPoly<T>,
    m: &MFactor<T>,
    samples: &[Complex<T>],
) -> T {
    let l = l_poly(p1, p2);
    let lhs = l.add(&l.reflect());
    let mp = m.poly();
    let r = mp.derivative().mul(&mp.reflect());
    let rhs = r.add(&r.reflect());
    samples
        .iter()
        .map(|&z| {
            let scale = lhs.abs_eval(z) + rhs.abs_eval(z);
            let d = (lhs.eval(z) - rhs.eval(z)).norm();
            if scale == T::zero() {
                d
            } else {
                d / scale
            }
        })
        .fold(T::zero(), T::max)
}
