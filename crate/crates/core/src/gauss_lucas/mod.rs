//! Verification of `Z_{P'} ⊆ Kull(Z_{P^s})` with per-point certificates, the
//! real-coefficient case `Z_{P'} ⊆ Kull(Z_P)`, and the per-slice reduction.

pub mod bound;
pub mod campaign;
pub mod factor;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::hull::{hull_membership_slice, slice_hull_membership, HullOutcome};
use crate::poly::QPoly;
use crate::quaternion::{Quaternion, UnitImaginary};
use crate::roots::complex::complex_roots;
use crate::roots::zeros::{critical_points, real_zero_set, symmetrization_zero_set, ZeroSet};
use crate::tolerances::Tolerances;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Violated,
}

/// One critical point and its membership outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct CriticalCheck<T> {
    pub q: Quaternion<T>,
    #[serde(flatten)]
    pub outcome: HullOutcome<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct GlReport<T> {
    pub id: String,
    pub verdict: Verdict,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub critical_points: Vec<CriticalCheck<T>>,
}

impl<T: Real> GlReport<T> {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    /// Largest distance reported by a failing point, zero when verified.
    pub fn worst_violation(&self) -> T {
        self.critical_points
            .iter()
            .filter(|c| !c.outcome.is_inside())
            .map(|c| c.outcome.distance())
            .fold(T::zero(), T::max)
    }
}

/// A uniformly distributed unit imaginary quaternion drawn from `rng`.
pub fn random_unit<T: Real, R: Rng>(rng: &mut R) -> UnitImaginary<T> {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    UnitImaginary::from_vector([T::of(r * phi.cos()), T::of(r * phi.sin()), T::of(z)])
        .unwrap_or_else(|_| UnitImaginary::i())
}

/// Representatives of the critical set that are checked against the hull.
///
/// Spherical critical points are checked at `x ± I y` for `I = i` and one
/// unit drawn from `seed`; by rotational symmetry of the target this covers
/// the whole sphere.
fn query_points<T: Real>(crit: &ZeroSet<T>, seed: u64) -> Vec<Quaternion<T>> {
    let mut out: Vec<_> = crit.isolated.iter().map(|z| z.q).collect();
    if !crit.spheres.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let units = [UnitImaginary::i(), random_unit(&mut rng)];
        for s in &crit.spheres {
            for u in units {
                out.push(u.embed(s.x, s.y));
                out.push(u.embed(s.x, -s.y));
            }
        }
    }
    out
}

fn check_against<T: Real>(
    id: &str,
    crit: &ZeroSet<T>,
    target: &ZeroSet<T>,
    tol: &Tolerances,
    seed: u64,
) -> Result<GlReport<T>> {
    let mut checks = Vec::new();
    for q in query_points(crit, seed) {
        checks.push(CriticalCheck {
            q,
            outcome: hull_membership_slice(q, target, tol)?,
        });
    }
    let verdict = if checks.iter().all(|c| c.outcome.is_inside()) {
        Verdict::Verified
    } else {
        Verdict::Violated
    };
    Ok(GlReport {
        id: id.to_string(),
        verdict,
        tolerances: *tol,
        seed,
        critical_points: checks,
    })
}

fn require_degree_two<T: Real>(p: &QPoly<T>) -> Result<()> {
    match p.degree() {
        Some(d) if d >= 2 => Ok(()),
        Some(d) => Err(Error::invalid(format!("degree {d} has no critical points to verify"))),
        None => Err(Error::invalid("the zero polynomial")),
    }
}

/// Checks every critical point of `P` against `Kull(Z_{P^s})`.
pub fn verify_gauss_lucas<T: Real>(p: &QPoly<T>, tol: &Tolerances, seed: u64) -> Result<GlReport<T>> {
    verify_gauss_lucas_with_id(p, tol, seed, "input")
}

pub fn verify_gauss_lucas_with_id<T: Real>(
    p: &QPoly<T>,
    tol: &Tolerances,
    seed: u64,
    id: &str,
) -> Result<GlReport<T>> {
    require_degree_two(p)?;
    let crit = critical_points(p, tol)?;
    let target = symmetrization_zero_set(p, tol)?;
    check_against(id, &crit, &target, tol, seed)
}

/// Checks every critical point of a real-coefficient `P` against `Kull(Z_P)`.
pub fn verify_real_case<T: Real>(p: &QPoly<T>, tol: &Tolerances, seed: u64) -> Result<GlReport<T>> {
    require_degree_two(p)?;
    let limit = T::of(tol.real) * p.max_coeff_norm();
    if p.coeffs().iter().any(|c| c.im_norm() > limit) {
        return Err(Error::invalid("the real case needs real coefficients"));
    }
    let real = QPoly::from_real(&p.real_parts());
    let crit = critical_points(&real, tol)?;
    let target = real_zero_set(&real.real_parts(), tol)?;
    check_against("input", &crit, &target, tol, seed)
}

/// Common roots of `P1'` and `P2'` on the slice, in slice coordinates.
pub fn slice_critical_points<T: Real>(p: &QPoly<T>, unit: UnitImaginary<T>, tol: &Tolerances) -> Result<Vec<Complex<T>>> {
    let d = p.restrict_to_slice(unit).derivative();
    let trim = T::of(tol.trim);
    let scale = d.p1.max_abs().max(d.p2.max_abs());
    let p1 = d.p1.clone().trimmed(trim);
    let p2 = d.p2.clone().trimmed(trim);
    let negligible = |c: &CPoly<T>| c.is_zero() || c.max_abs() <= trim * scale;
    let (a, b) = match (negligible(&p1), negligible(&p2)) {
        (true, true) => return Err(Error::invalid("the derivative vanishes")),
        (true, false) => return roots_of(&p2, tol),
        (false, true) => return roots_of(&p1, tol),
        (false, false) => (p1, p2),
    };
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let ra = roots_of(&a, tol)?;
    let rb = roots_of(&b, tol)?;
    let near = T::of(tol.classify);
    Ok(ra
        .into_iter()
        .filter(|z| {
            let close = rb.iter().any(|w| (*z - *w).norm() <= near * (T::one() + z.norm()));
            close || b.eval(*z).norm() <= T::of(tol.zero) * b.abs_eval(*z)
        })
        .collect())
}

fn roots_of<T: Real>(p: &CPoly<T>, tol: &Tolerances) -> Result<Vec<Complex<T>>> {
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    Ok(complex_roots(p, tol)?
        .into_iter()
        .map(|r| r.center)
        .collect())
}

/// Per-slice form of the theorem: on every sampled slice the common roots of
/// `P1'`, `P2'` lie in the planar hull of the roots of `P^s|C(I)`.
pub fn slice_equivalence_check<T: Real>(p: &QPoly<T>, units: &[UnitImaginary<T>], tol: &Tolerances) -> Result<bool> {
    require_degree_two(p)?;
    for &unit in units {
        let crit = slice_critical_points(p, unit, tol)?;
        if crit.is_empty() {
            continue;
        }
        let q = p.restrict_to_slice(unit).symmetrized();
        let pts: Vec<Quaternion<T>> = complex_roots(&q, tol)?
            .into_iter()
            .map(|r| unit.embed_complex(r.center))
            .collect();
        for z in crit {
            let query = unit.embed_complex(z);
            if !slice_hull_membership(query, unit, &pts, tol).is_inside() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
