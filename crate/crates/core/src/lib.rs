//! Quaternionic polynomials with right coefficients: star-product algebra,
//! zero sets with isolated/spherical classification, and numerical
//! verification of the quaternionic Gauss–Lucas theorem with convex-hull
//! certificates.
//!
//! Everything is generic over the scalar type through [`Real`] (`f32` or
//! `f64`); the aliases at the crate root fix `f64`, which is what the CLI
//! and the default [`Tolerances`] are tuned for.

pub mod cli;
pub mod cpoly;
pub mod error;
pub mod gauss_lucas;
pub mod hull;
pub mod poly;
pub mod quaternion;
pub mod roots;
pub mod scalar;
pub mod tolerances;

pub use error::{Error, Result};
pub use scalar::Real;
pub use tolerances::Tolerances;

pub use cpoly::CPoly;
pub use poly::{characteristic_poly, pointwise_star_eval, ComplexSlicePoly, QPoly};
pub use quaternion::{
    imag_unit, orthogonal_unit, same_sphere, sphere_of, Quaternion, TwoSphere, UnitImaginary,
};
pub use roots::complex::{complex_roots, real_poly_roots, RootCluster};

pub use gauss_lucas::bound::{modulus_lower_bound, ModulusBound};
pub use gauss_lucas::campaign::{run_campaign, CampaignKind, CampaignReport};
pub use gauss_lucas::factor::{check_l_identity, fejer_riesz_factor, MFactor};
pub use gauss_lucas::{slice_equivalence_check, verify_gauss_lucas, verify_real_case, GlReport, Verdict};
pub use hull::{hull_membership_4d, hull_membership_slice, HullCertificate, HullOutcome};

pub type Quat = Quaternion<f64>;
pub type Poly = QPoly<f64>;
pub type Unit = UnitImaginary<f64>;
pub type Sphere = TwoSphere<f64>;
pub use roots::zeros::{
    classify_sphere, critical_points, real_zero_set, symmetrization_zero_set, zero_set,
    IsolatedZero, SphereClass, SphericalZero, ZeroSet,
};
