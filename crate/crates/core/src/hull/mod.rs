//! Convex-hull membership in `H ≅ R^4` with explicit convex-combination
//! certificates.
//!
//! Zero sets that are unions of spheres and real points are invariant under
//! rotations of the imaginary space, so their hull meets every slice `C(I)` in
//! the planar hull of the slice representatives; [`hull_membership_slice`]
//! works there. [`hull_membership_4d`] handles arbitrary finite point sets.

pub mod planar;
pub mod wolfe;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::quaternion::{Quaternion, UnitImaginary};
use crate::roots::zeros::{relative_residual, slice_unit_of, ZeroSet};
use crate::tolerances::Tolerances;
use crate::Real;

/// Samples per sphere when a sphere has to be approximated by points.
pub const SPHERE_SAMPLES: usize = 256;

/// Convex combination witnessing that a query lies in a hull.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct HullCertificate<T> {
    pub points: Vec<Quaternion<T>>,
    pub weights: Vec<T>,
    /// `|Σ w_i p_i - query|`.
    pub slack: T,
}

impl<T: Real> HullCertificate<T> {
    pub fn combination(&self) -> Quaternion<T> {
        self.points
            .iter()
            .zip(&self.weights)
            .fold(Quaternion::zero(), |acc, (&p, &w)| acc + p * w)
    }

    /// Re-checks the certificate from scratch: weights in `[0, 1]` summing to
    /// one, combination within `slack` of the query, and `slack` under the
    /// acceptance threshold `hull · (1 + |query|)`.
    pub fn verify(&self, query: Quaternion<T>, tol: &Tolerances) -> bool {
        if self.points.is_empty() || self.points.len() != self.weights.len() {
            return false;
        }
        if self.weights.iter().any(|&w| !(w >= T::zero() && w <= T::one())) {
            return false;
        }
        let sum = self.weights.iter().fold(T::zero(), |a, &w| a + w);
        if (sum - T::one()).abs() > T::of(1e-12) {
            return false;
        }
        let err = (self.combination() - query).norm();
        let rounding = T::epsilon() * T::of(16.0) * (T::one() + query.norm());
        err <= self.slack + rounding && self.slack <= hull_threshold(query, tol)
    }

    /// Largest relative residual of the certificate points as zeros of `p`.
    pub fn max_point_residual(&self, p: &QPoly<T>) -> T {
        self.points
            .iter()
            .map(|&q| relative_residual(p, q))
            .fold(T::zero(), T::max)
    }
}

/// Result of a membership query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub enum HullOutcome<T> {
    #[serde(rename = "certificate")]
    Inside(HullCertificate<T>),
    #[serde(rename = "violation")]
    Outside { distance: T },
}

impl<T: Real> HullOutcome<T> {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullOutcome::Inside(_))
    }

    pub fn certificate(&self) -> Option<&HullCertificate<T>> {
        match self {
            HullOutcome::Inside(c) => Some(c),
            HullOutcome::Outside { .. } => None,
        }
    }

    /// Distance to the hull: the slack when inside.
    pub fn distance(&self) -> T {
        match self {
            HullOutcome::Inside(c) => c.slack,
            HullOutcome::Outside { distance } => *distance,
        }
    }
}

/// `ε_hull (1 + |q|)`.
pub fn hull_threshold<T: Real>(query: Quaternion<T>, tol: &Tolerances) -> T {
    T::of(tol.hull) * (T::one() + query.norm())
}

fn decide<T: Real>(cert: HullCertificate<T>, distance: T, query: Quaternion<T>, tol: &Tolerances) -> HullOutcome<T> {
    if cert.slack <= hull_threshold(query, tol) {
        HullOutcome::Inside(cert)
    } else {
        HullOutcome::Outside { distance }
    }
}

/// Membership of `q` in `Kull(zs)` for a zero set made of real points and
/// spheres, decided in the slice `C(I_q)`.
///
/// Zero sets carrying non-real isolated zeros are not rotation invariant; they
/// are handed to [`hull_membership_4d`], exactly when there are no spheres and
/// with [`SPHERE_SAMPLES`] samples per sphere otherwise.
pub fn hull_membership_slice<T: Real>(
    q: Quaternion<T>,
    zs: &ZeroSet<T>,
    tol: &Tolerances,
) -> Result<HullOutcome<T>> {
    if zs.is_empty() {
        return Err(Error::invalid("convex hull of an empty zero set"));
    }
    if !zs.is_rotation_invariant(T::of(tol.unit)) {
        return Ok(hull_membership_4d(q, &zs.sampled_points(SPHERE_SAMPLES), tol));
    }
    let unit = slice_unit_of(q, tol);
    let pts = zs.slice_points(unit);
    Ok(slice_hull_membership(q, unit, &pts, tol))
}

/// Planar membership of `q ∈ C(unit)` among points that all lie in `C(unit)`.
pub fn slice_hull_membership<T: Real>(
    q: Quaternion<T>,
    unit: UnitImaginary<T>,
    pts: &[Quaternion<T>],
    tol: &Tolerances,
) -> HullOutcome<T> {
    let coords: Vec<[T; 2]> = pts
        .iter()
        .map(|&p| {
            let z = unit.project(p);
            [z.re, z.im]
        })
        .collect();
    let qz = unit.project(q);
    let planar = planar::nearest_in_hull(&coords, [qz.re, qz.im]);
    let mut cert = HullCertificate {
        points: planar.terms.iter().map(|&(i, _)| pts[i]).collect(),
        weights: planar.terms.iter().map(|&(_, w)| w).collect(),
        slack: T::zero(),
    };
    cert.slack = (cert.combination() - q).norm().max(planar.distance);
    let distance = cert.slack;
    decide(cert, distance, q, tol)
}

/// Membership of `q` in the hull of a finite point list in `R^4`.
pub fn hull_membership_4d<T: Real>(q: Quaternion<T>, points: &[Quaternion<T>], tol: &Tolerances) -> HullOutcome<T> {
    if points.is_empty() {
        return HullOutcome::Outside {
            distance: T::infinity(),
        };
    }
    let near = wolfe::nearest_point(points, q);
    let mut cert = HullCertificate {
        points: near.support.iter().map(|&(i, _)| points[i]).collect(),
        weights: near.support.iter().map(|&(_, w)| w.max(T::zero()).min(T::one())).collect(),
        slack: T::zero(),
    };
    let sum = cert.weights.iter().fold(T::zero(), |a, &w| a + w);
    for w in cert.weights.iter_mut() {
        *w = *w / sum;
    }
    cert.slack = (cert.combination() - q).norm();
    let distance = cert.slack.max(near.distance);
    decide(cert, distance, q, tol)
}

/// Sampling error bound `2π y / √n` of approximating a sphere of radius `y` by `n` points.
pub fn sampling_error<T: Real>(radius: T, samples: usize) -> T {
    T::two() * T::PI() * radius / T::of(samples as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::zeros::{IsolatedZero, SphericalZero};

    type Q = Quaternion<f64>;

    fn sphere_set(x: f64, y: f64) -> ZeroSet<f64> {
        ZeroSet {
            isolated: vec![],
            spheres: vec![SphericalZero { x, y, mult: 1, residual: 0.0 }],
        }
    }

    #[test]
    fn minus_i_inside_sphere_of_radius_sqrt2() {
        let tol = Tolerances::default();
        let s2 = 2f64.sqrt();
        let out = hull_membership_slice(-Q::i(), &sphere_set(0.0, s2), &tol).unwrap();
        let cert = out.certificate().expect("inside");
        assert!(cert.verify(-Q::i(), &tol));
        // weights solve λ√2 + (1 - λ)(-√2) = -1
        let up = (s2 + 1.0) / (2.0 * s2);
        let down = (s2 - 1.0) / (2.0 * s2);
        assert_eq!(cert.points.len(), 2);
        for (p, w) in cert.points.iter().zip(&cert.weights) {
            let want = if p.x > 0.0 { down } else { up };
            assert!((w - want).abs() < 1e-15, "{p} {w}");
        }
    }

    #[test]
    fn minus_i_outside_single_point() {
        let tol = Tolerances::default();
        let zs = ZeroSet {
            isolated: vec![IsolatedZero { q: Q::new(0.0, -1.0, 0.0, -1.0), mult: 2, residual: 0.0 }],
            spheres: vec![],
        };
        match hull_membership_slice(-Q::i(), &zs, &tol).unwrap() {
            HullOutcome::Outside { distance } => assert!((distance - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_itself_has_weight_one() {
        let tol = Tolerances::default();
        let zs = ZeroSet {
            isolated: vec![IsolatedZero { q: Q::real(3.0), mult: 1, residual: 0.0 }],
            spheres: vec![SphericalZero { x: 0.0, y: 2.0, mult: 1, residual: 0.0 }],
        };
        let out = hull_membership_slice(Q::real(3.0), &zs, &tol).unwrap();
        let c = out.certificate().unwrap();
        assert_eq!(c.weights, vec![1.0]);
        assert_eq!(c.points, vec![Q::real(3.0)]);

        let on_sphere = Q::new(0.0, 0.0, 2.0, 0.0);
        let c = hull_membership_slice(on_sphere, &zs, &tol).unwrap();
        assert!(c.certificate().unwrap().slack < 1e-15);
    }

    #[test]
    fn empty_set_is_rejected() {
        assert!(hull_membership_slice(Q::one(), &ZeroSet::empty(), &Tolerances::default()).is_err());
    }

    #[test]
    fn four_d_examples() {
        let tol = Tolerances::default();
        let pts = [Q::new(1.0, 2.0, 3.0, 4.0), Q::new(-1.0, 0.0, 1.0, 0.0)];
        let out = hull_membership_4d(pts[0], &pts, &tol);
        assert_eq!(out.certificate().unwrap().weights, vec![1.0]);
        let mid = (pts[0] + pts[1]) * 0.5;
        let out = hull_membership_4d(mid, &pts, &tol);
        let c = out.certificate().unwrap();
        assert!(c.weights.iter().all(|w| (w - 0.5).abs() < 1e-14));
        assert!(c.verify(mid, &tol));

        let samples = sphere_set(0.0, 2f64.sqrt()).sampled_points(64);
        assert!(hull_membership_4d(-Q::i(), &samples, &tol).is_inside());
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let tol = Tolerances::default();
        let out = hull_membership_slice(-Q::i(), &sphere_set(0.0, 2f64.sqrt()), &tol).unwrap();
        let mut c = out.certificate().unwrap().clone();
        assert!(c.verify(-Q::i(), &tol));
        c.weights[0] += 0.01;
        assert!(!c.verify(-Q::i(), &tol));
        let mut c = out.certificate().unwrap().clone();
        c.points[0] = c.points[0] + Q::k();
        assert!(!c.verify(-Q::i(), &tol));
    }

    #[test]
    fn outcome_json_shape() {
        let v: HullOutcome<f64> = HullOutcome::Outside { distance: 1.0 };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"violation":{"distance":1.0}}"#);
    }
}
