use serde::{Deserialize, Serialize};

use crate::Real;

/// Every numerical threshold used by the crate, in binary64 units.
///
/// The defaults are tuned for `f64`. [`Tolerances::for_scalar`] maps them onto
/// another precision by keeping each threshold at the same power of machine
/// epsilon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Unit-imaginary checks (scalar part, norm, orthogonality).
    pub unit: f64,
    /// Sphere membership comparisons.
    pub sphere: f64,
    /// Relative threshold for trimming the leading coefficient.
    pub trim: f64,
    /// Relative zero test in the pointwise star evaluation.
    pub eval: f64,
    /// Relative bound on imaginary parts of symmetrized coefficients.
    pub real: f64,
    /// Residual bound for reported zeros, relative to `scale(P)`.
    pub zero: f64,
    /// Root cluster merge radius, relative to `1 + |root|`.
    pub cluster: f64,
    /// Residual bound on complex root clusters.
    pub root: f64,
    /// Hull certificate acceptance, relative to `1 + |query|`.
    pub hull: f64,
    /// Factorization residual, relative to `1 + max |coeff|`.
    pub factor: f64,
    /// Acceptance of the recovered unit when classifying a sphere.
    pub classify: f64,
    /// Derivative test used to confirm a multiple-root cluster.
    pub multiplicity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit: 1e-10,
            sphere: 1e-8,
            trim: 1e-12,
            eval: 1e-10,
            real: 1e-12,
            zero: 1e-8,
            cluster: 1e-6,
            root: 1e-8,
            hull: 1e-8,
            factor: 1e-8,
            classify: 1e-6,
            multiplicity: 1e-10,
        }
    }
}

impl Tolerances {
    /// Defaults rescaled to the precision of `T`.
    pub fn for_scalar<T: Real>() -> Self {
        let eps = T::epsilon().to_f64_lossy();
        if eps <= f64::EPSILON {
            return Self::default();
        }
        let d = Self::default();
        let r = |tol: f64| eps.powf(tol.ln() / f64::EPSILON.ln());
        Self {
            unit: r(d.unit),
            sphere: r(d.sphere),
            trim: r(d.trim),
            eval: r(d.eval),
            real: r(d.real),
            zero: r(d.zero),
            cluster: r(d.cluster),
            root: r(d.root),
            hull: r(d.hull),
            factor: r(d.factor),
            classify: r(d.classify),
            multiplicity: r(d.multiplicity),
        }
    }
}
