//! Wolfe's minimum-norm-point method in `R^4`: the nearest point of a finite
//! point set's convex hull, with at most five support points.

use crate::quaternion::Quaternion;
use crate::Real;

pub const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct NearestPoint<T> {
    /// `(index, weight)` pairs, weights positive and summing to one.
    pub support: Vec<(usize, T)>,
    pub distance: T,
    pub iterations: usize,
}

/// Nearest point of `conv(points)` to `query`. `points` must be nonempty.
pub fn nearest_point<T: Real>(points: &[Quaternion<T>], query: Quaternion<T>) -> NearestPoint<T> {
    assert!(!points.is_empty(), "hull of an empty point set");
    let ys: Vec<Quaternion<T>> = points.iter().map(|&p| p - query).collect();
    let max_sq = ys.iter().fold(T::zero(), |m, y| m.max(y.norm_sqr()));
    let eps = T::epsilon() * T::of(64.0);

    let first = (0..ys.len())
        .min_by(|&a, &b| ys[a].norm_sqr().partial_cmp(&ys[b].norm_sqr()).unwrap_or(std::cmp::Ordering::Equal))
        .expect("nonempty");
    let mut set = vec![first];
    let mut lam = vec![T::one()];
    let mut x = ys[first];
    let mut iterations = 0;

    'major: while iterations < MAX_ITERATIONS {
        iterations += 1;
        let xx = x.norm_sqr();
        if xx == T::zero() {
            break;
        }
        let (j, xy) = (0..ys.len())
            .map(|j| (j, x.dot(ys[j])))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty");
        if xx - xy <= eps * max_sq.max(xx) || set.contains(&j) || set.len() == 5 {
            break;
        }
        set.push(j);
        lam.push(T::zero());

        loop {
            iterations += 1;
            let Some(mu) = affine_minimizer(&ys, &set) else {
                // affinely dependent: the new point cannot improve on the current face
                set.pop();
                lam.pop();
                break 'major;
            };
            if mu.iter().all(|&m| m > eps) {
                lam = mu;
                x = combine(&ys, &set, &lam);
                break;
            }
            let mut theta = T::one();
            for (l, m) in lam.iter().zip(&mu) {
                if *m <= eps && *l - *m > T::zero() {
                    theta = theta.min(*l / (*l - *m));
                }
            }
            for (l, m) in lam.iter_mut().zip(&mu) {
                *l = theta * *m + (T::one() - theta) * *l;
            }
            let keep: Vec<bool> = lam.iter().map(|&l| l > eps).collect();
            if keep.iter().all(|&k| k) {
                // theta hit no boundary exactly; drop the smallest to guarantee progress
                let (drop, _) = lam
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
                    .expect("nonempty");
                set.remove(drop);
                lam.remove(drop);
            } else {
                let mut k = 0;
                set.retain(|_| {
                    k += 1;
                    keep[k - 1]
                });
                let mut k = 0;
                lam.retain(|_| {
                    k += 1;
                    keep[k - 1]
                });
            }
            let s = lam.iter().fold(T::zero(), |a, &b| a + b);
            for l in lam.iter_mut() {
                *l = *l / s;
            }
            x = combine(&ys, &set, &lam);
            if iterations >= MAX_ITERATIONS {
                break 'major;
            }
        }
    }

    NearestPoint {
        support: set.into_iter().zip(lam).collect(),
        distance: x.norm(),
        iterations,
    }
}

fn combine<T: Real>(ys: &[Quaternion<T>], set: &[usize], lam: &[T]) -> Quaternion<T> {
    set.iter()
        .zip(lam)
        .fold(Quaternion::zero(), |acc, (&i, &l)| acc + ys[i] * l)
}

/// Weights summing to one that minimize `|Σ μ_i y_i|` over the affine hull of `set`.
fn affine_minimizer<T: Real>(ys: &[Quaternion<T>], set: &[usize]) -> Option<Vec<T>> {
    let y0 = ys[set[0]];
    let d: Vec<Quaternion<T>> = set[1..].iter().map(|&i| ys[i] - y0).collect();
    let n = d.len();
    if n == 0 {
        return Some(vec![T::one()]);
    }
    // normal equations D^T D t = -D^T y0 via Cholesky
    let mut g = vec![vec![T::zero(); n]; n];
    let mut rhs = vec![T::zero(); n];
    let mut diag_max = T::zero();
    for a in 0..n {
        for b in 0..n {
            g[a][b] = d[a].dot(d[b]);
        }
        rhs[a] = -d[a].dot(y0);
        diag_max = diag_max.max(g[a][a]);
    }
    let floor = diag_max * T::epsilon() * T::of(1e3);
    let mut l = vec![vec![T::zero(); n]; n];
    for a in 0..n {
        for b in 0..=a {
            let mut s = g[a][b];
            for c in 0..b {
                s -= l[a][c] * l[b][c];
            }
            if a == b {
                if s <= floor {
                    return None;
                }
                l[a][a] = s.sqrt();
            } else {
                l[a][b] = s / l[b][b];
            }
        }
    }
    let mut z = vec![T::zero(); n];
    for a in 0..n {
        let mut s = rhs[a];
        for c in 0..a {
            s -= l[a][c] * z[c];
        }
        z[a] = s / l[a][a];
    }
    let mut t = vec![T::zero(); n];
    for a in (0..n).rev() {
        let mut s = z[a];
        for c in a + 1..n {
            s -= l[c][a] * t[c];
        }
        t[a] = s / l[a][a];
    }
    let mut mu = Vec::with_capacity(n + 1);
    mu.push(T::one() - t.iter().fold(T::zero(), |a, &b| a + b));
    mu.extend(t);
    Some(mu)
}
