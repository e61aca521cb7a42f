//! Lower bound on the largest zero modulus of `P` or `P^c`, read off the
//! coefficients `b_n` of `P^s`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusBound<T> {
    pub bound: T,
    /// The `n` attaining the maximum.
    pub n: usize,
    pub b_2m: T,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `max_{0<n<2m} (|b_{2m-n}| / (C(2m, n) |b_{2m}|))^{1/n}`.
pub fn modulus_lower_bound<T: Real>(p: &QPoly<T>) -> Result<ModulusBound<T>> {
    let m = match p.degree() {
        None => return Err(Error::invalid("the zero polynomial has no zeros to bound")),
        Some(0) => return Err(Error::invalid("a nonzero constant has no zeros to bound")),
        Some(m) => m,
    };
    let b = p.symmetrize_real();
    let top = 2 * m;
    let b_2m = b[top];
    if !(b_2m.abs() > T::zero()) || !b_2m.is_finite() {
        return Err(Error::HypothesisViolated(b_2m.to_f64_lossy()));
    }
    let mut best = ModulusBound {
        bound: T::zero(),
        n: 1,
        b_2m,
    };
    for n in 1..top {
        let ratio = b[top - n].abs() / (T::of(binomial(top, n)) * b_2m.abs());
        let v = ratio.powf(T::one() / T::of(n as f64));
        if v > best.bound {
            best.bound = v;
            best.n = n;
        }
    }
    Ok(best)
}
