//! Complex polynomial roots: companion-matrix eigenvalues, Newton polish,
//! and multiplicity clustering.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;
use crate::Real;

/// A root with multiplicity. `residual` is `|p(center)| / Σ|c_n||center|^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootCluster<T> {
    pub center: Complex<T>,
    pub multiplicity: usize,
    pub residual: T,
}

const MAX_QR_SWEEPS_PER_ROOT: usize = 60;
const NEWTON_STEPS: usize = 8;

/// All roots of `p`, with multiplicity.
///
/// Conjugation closure is enforced when every coefficient is real.
pub fn complex_roots<T: Real>(p: &CPoly<T>, tol: &Tolerances) -> Result<Vec<RootCluster<T>>> {
    let p = p.clone().trimmed(T::zero());
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::invalid("root finding needs a polynomial of degree >= 1")),
    };
    let real_input = p.coeffs.iter().all(|c| c.im == T::zero());

    // Roots at the origin are split off exactly.
    let zeros_at_origin = p.coeffs.iter().position(|c| c.norm() != T::zero()).unwrap_or(0);
    let reduced = CPoly::new(p.coeffs[zeros_at_origin..].to_vec());

    // Raw eigenvalues are clustered before polishing: around a multiple root
    // their mean is accurate, while individually polished copies are not.
    let raw = if reduced.degree().unwrap_or(0) >= 1 {
        companion_eigenvalues(&reduced)?
    } else {
        Vec::new()
    };

    let mut clusters = cluster_roots(&reduced, &raw, tol);
    if zeros_at_origin > 0 {
        clusters.push(RootCluster {
            center: Complex::new(T::zero(), T::zero()),
            multiplicity: zeros_at_origin,
            residual: T::zero(),
        });
    }

    if real_input {
        clusters = pair_conjugates(clusters, tol)?;
    }

    for c in clusters.iter_mut() {
        c.residual = relative_residual(&p, c.center);
    }
    let total: usize = clusters.iter().map(|c| c.multiplicity).sum();
    if total != degree {
        return Err(Error::breakdown(
            "complex_roots",
            format!("multiplicities sum to {total}, degree is {degree}"),
        ));
    }
    let limit = T::of(tol.root);
    if let Some(bad) = clusters.iter().find(|c| c.residual > limit) {
        return Err(Error::breakdown(
            "complex_roots",
            format!(
                "root {}{:+}i (multiplicity {}) has residual {:e}",
                bad.center.re, bad.center.im, bad.multiplicity, bad.residual
            ),
        ));
    }
    clusters.sort_by(|a, b| {
        a.center
            .re
            .partial_cmp(&b.center.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.center.im.partial_cmp(&b.center.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(clusters)
}

/// Convenience wrapper for real coefficient vectors.
pub fn real_poly_roots<T: Real>(coeffs: &[T], tol: &Tolerances) -> Result<Vec<RootCluster<T>>> {
    complex_roots(&CPoly::from_real(coeffs), tol)
}

fn relative_residual<T: Real>(p: &CPoly<T>, z: Complex<T>) -> T {
    let scale = p.abs_eval(z);
    if scale == T::zero() {
        return T::zero();
    }
    p.eval(z).norm() / scale
}

/// Eigenvalues of the balanced companion matrix of `p`, `p(0) != 0`.
fn companion_eigenvalues<T: Real>(p: &CPoly<T>) -> Result<Vec<Complex<T>>> {
    let n = p.degree().expect("nonzero polynomial");
    let lead = p.coeffs[n];
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let mut h = vec![vec![zero; n]; n];
    for j in 0..n {
        h[0][j] = -p.coeffs[n - 1 - j] / lead;
    }
    for i in 1..n {
        h[i][i - 1] = one;
    }
    balance(&mut h);
    hessenberg_qr_eigenvalues(h)
}

#[inline]
fn abs1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

/// Parlett–Reinsch diagonal balancing with radix-2 scaling factors.
fn balance<T: Real>(h: &mut [Vec<Complex<T>>]) {
    let n = h.len();
    let radix = T::two();
    let sq = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c += abs1(h[j][i]);
                    r += abs1(h[i][j]);
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sq;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sq;
            }
            if (c + r) / f < T::of(0.95) * s {
                done = false;
                let inv = T::one() / f;
                for j in 0..n {
                    h[i][j] = h[i][j] * inv;
                }
                for row in h.iter_mut() {
                    row[i] = row[i] * f;
                }
            }
        }
    }
}

/// Complex single-shift QR on an upper Hessenberg matrix (eigenvalues only).
fn hessenberg_qr_eigenvalues<T: Real>(mut h: Vec<Vec<Complex<T>>>) -> Result<Vec<Complex<T>>> {
    let n = h.len();
    let eps = T::epsilon();
    let zero = Complex::new(T::zero(), T::zero());
    let mut eig = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter = 0usize;
    let mut total = 0usize;
    let mut rots: Vec<(Complex<T>, Complex<T>)> = Vec::with_capacity(n);

    while hi > 0 {
        let last = hi - 1;
        // find the start of the unreduced block ending at `last`
        let mut lo = last;
        while lo > 0 {
            let s = abs1(h[lo - 1][lo - 1]) + abs1(h[lo][lo]);
            let s = if s == T::zero() { T::one() } else { s };
            if abs1(h[lo][lo - 1]) <= eps * s {
                h[lo][lo - 1] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == last {
            eig.push(h[last][last]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > MAX_QR_SWEEPS_PER_ROOT || total > MAX_QR_SWEEPS_PER_ROOT * n {
            return Err(Error::breakdown(
                "complex_roots",
                format!("QR iteration did not converge for block {lo}..={last}"),
            ));
        }

        let shift = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[last][last] + Complex::new(abs1(h[last][last - 1]) * T::of(0.75), T::zero())
        } else {
            wilkinson_shift(h[last - 1][last - 1], h[last - 1][last], h[last][last - 1], h[last][last])
        };

        for d in lo..=last {
            h[d][d] = h[d][d] - shift;
        }
        rots.clear();
        for k in lo..last {
            let a = h[k][k];
            let b = h[k + 1][k];
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if r == T::zero() {
                (Complex::new(T::one(), T::zero()), zero)
            } else {
                (a / r, b / r)
            };
            // rows k, k+1 ← [[c̄, s̄], [-s, c]] · rows
            for j in k..=last {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = c.conj() * x + s.conj() * y;
                h[k + 1][j] = -s * x + c * y;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            let top = (k + 2).min(last);
            // cols k, k+1 ← cols · [[c, -s̄], [s, c̄]]
            for row in h.iter_mut().take(top + 1).skip(lo) {
                let x = row[k];
                let y = row[k + 1];
                row[k] = x * c + y * s;
                row[k + 1] = -(x * s.conj()) + y * c.conj();
            }
        }
        for d in lo..=last {
            h[d][d] = h[d][d] + shift;
        }
    }
    Ok(eig)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::half();
    let tr = (a + d) * half;
    let diff = (a - d) * half;
    let disc = (diff * diff + b * c).sqrt();
    let l1 = tr + disc;
    let l2 = tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Safeguarded Newton: a step is kept only if it lowers `|p|`.
fn newton_polish<T: Real>(p: &CPoly<T>, mut z: Complex<T>) -> Complex<T> {
    let dp = p.derivative();
    let mut best = p.eval(z).norm();
    for _ in 0..NEWTON_STEPS {
        if best == T::zero() {
            break;
        }
        let d = dp.eval(z);
        if d.norm() == T::zero() {
            break;
        }
        let next = z - p.eval(z) / d;
        let val = p.eval(next).norm();
        if !(val < best) {
            break;
        }
        z = next;
        best = val;
    }
    z
}

/// `t_k = p^(k)(c) / k!` and `Σ C(n,k)|a_n||c|^{n-k}` for `k < count`.
fn taylor_terms<T: Real>(p: &CPoly<T>, c: Complex<T>, count: usize) -> Vec<(Complex<T>, T)> {
    let mut work = p.coeffs.clone();
    let mut mags: Vec<T> = p.coeffs.iter().map(|a| a.norm()).collect();
    let r = c.norm();
    let mut out = Vec::with_capacity(count);
    // repeated synthetic division by (z - c)
    for _ in 0..count {
        if work.is_empty() {
            out.push((Complex::new(T::zero(), T::zero()), T::zero()));
            continue;
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        let mut macc = T::zero();
        let mut next = vec![Complex::new(T::zero(), T::zero()); work.len().saturating_sub(1)];
        let mut mnext = vec![T::zero(); work.len().saturating_sub(1)];
        for i in (0..work.len()).rev() {
            acc = acc * c + work[i];
            macc = macc * r + mags[i];
            if i > 0 {
                next[i - 1] = acc;
                mnext[i - 1] = macc;
            }
        }
        out.push((acc, macc));
        work = next;
        mags = mnext;
    }
    out
}

/// Whether `c` behaves like a root of multiplicity `mult` (all Taylor terms
/// below `mult` vanish to the tolerance).
fn is_multiple_root<T: Real>(p: &CPoly<T>, c: Complex<T>, mult: usize, tol: T) -> bool {
    taylor_terms(p, c, mult)
        .into_iter()
        .all(|(t, s)| s == T::zero() || t.norm() <= tol * s)
}

/// Newton on `p^(mult-1)`, where a root of multiplicity `mult` is simple.
fn polish_center<T: Real>(p: &CPoly<T>, c: Complex<T>, mult: usize) -> Complex<T> {
    let mut q = p.clone();
    for _ in 1..mult {
        q = q.derivative();
    }
    newton_polish(&q, c)
}

/// Single-linkage components of `idx` under the relative radius `radius`.
fn components<T: Real>(pts: &[Complex<T>], idx: &[usize], radius: T) -> Vec<Vec<usize>> {
    let mut seen = vec![false; idx.len()];
    let mut out = Vec::new();
    for start in 0..idx.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let a = pts[idx[comp[head]]];
            head += 1;
            for (other, flag) in seen.iter_mut().enumerate() {
                if *flag {
                    continue;
                }
                let b = pts[idx[other]];
                let scale = T::one() + a.norm().max(b.norm());
                if (a - b).norm() <= radius * scale {
                    *flag = true;
                    comp.push(other);
                }
            }
        }
        out.push(comp.into_iter().map(|k| idx[k]).collect());
    }
    out
}

/// Groups approximate roots into clusters. Groups found at a coarse radius are
/// kept only if their mean passes the multiple-root test; otherwise the radius
/// shrinks by a decade, down to the base merge radius.
fn cluster_roots<T: Real>(p: &CPoly<T>, pts: &[Complex<T>], tol: &Tolerances) -> Vec<RootCluster<T>> {
    let base = T::of(tol.cluster);
    let mult_tol = T::of(tol.multiplicity);
    let mut radii = Vec::new();
    let mut r = T::of(1e-2);
    while r > base {
        radii.push(r);
        r = r * T::of(0.1);
    }
    radii.push(base);

    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![((0..pts.len()).collect(), 0)];
    while let Some((group, level)) = stack.pop() {
        for comp in components(pts, &group, radii[level]) {
            let mult = comp.len();
            let mean = comp.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &k| acc + pts[k])
                / T::of(mult as f64);
            let last_level = level + 1 == radii.len();
            if mult == 1 {
                out.push(RootCluster {
                    center: newton_polish(p, pts[comp[0]]),
                    multiplicity: 1,
                    residual: T::zero(),
                });
            } else if last_level || is_multiple_root(p, mean, mult, mult_tol) {
                let polished = polish_center(p, mean, mult);
                let center = if is_multiple_root(p, polished, mult, mult_tol) || !is_multiple_root(p, mean, mult, mult_tol) {
                    polished
                } else {
                    mean
                };
                out.push(RootCluster {
                    center,
                    multiplicity: mult,
                    residual: T::zero(),
                });
            } else {
                stack.push((comp, level + 1));
            }
        }
    }
    out
}

/// Snaps near-real clusters onto the axis and mirrors each upper cluster onto
/// its lower partner.
fn pair_conjugates<T: Real>(clusters: Vec<RootCluster<T>>, tol: &Tolerances) -> Result<Vec<RootCluster<T>>> {
    let base = T::of(tol.cluster);
    let mut reals = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for c in clusters {
        let snap = base * (T::one() + c.center.norm());
        if c.center.im.abs() <= snap {
            reals.push(RootCluster {
                center: Complex::new(c.center.re, T::zero()),
                ..c
            });
        } else if c.center.im > T::zero() {
            upper.push(c);
        } else {
            lower.push(c);
        }
    }
    let mut used = vec![false; lower.len()];
    let mut out = reals;
    for u in upper {
        let want = u.center.conj();
        let best = lower
            .iter()
            .enumerate()
            .filter(|(k, l)| !used[*k] && l.multiplicity == u.multiplicity)
            .min_by(|(_, a), (_, b)| {
                (a.center - want)
                    .norm()
                    .partial_cmp(&(b.center - want).norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(k, _)| k);
        let Some(k) = best else {
            return Err(Error::breakdown(
                "complex_roots",
                format!("no conjugate partner for root {}{:+}i", u.center.re, u.center.im),
            ));
        };
        let gap = (lower[k].center - want).norm();
        if gap > T::of(1e-3) * (T::one() + u.center.norm()) {
            return Err(Error::breakdown(
                "complex_roots",
                format!("conjugate partner of {}{:+}i is off by {:e}", u.center.re, u.center.im, gap),
            ));
        }
        used[k] = true;
        out.push(u);
        out.push(RootCluster { center: want, ..u });
    }
    if used.iter().any(|u| !u) {
        return Err(Error::breakdown("complex_roots", "unpaired lower half-plane root"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn find(roots: &[RootCluster<f64>], z: Complex<f64>, eps: f64) -> &RootCluster<f64> {
        roots
            .iter()
            .find(|r| (r.center - z).norm() < eps)
            .unwrap_or_else(|| panic!("root {z} not found in {roots:?}"))
    }

    #[test]
    fn unit_circle_pair() {
        let r = real_poly_roots(&[1.0, 0.0, 1.0], &tol()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(find(&r, c(0.0, 1.0), 1e-14).multiplicity, 1);
        assert_eq!(find(&r, c(0.0, -1.0), 1e-14).multiplicity, 1);
    }

    #[test]
    fn double_pair_from_square() {
        // z^4/4 + z^2 + 1 = (z^2/2 + 1)^2
        let r = real_poly_roots(&[1.0, 0.0, 1.0, 0.0, 0.25], &tol()).unwrap();
        let s = 2f64.sqrt();
        assert_eq!(r.len(), 2);
        let up = find(&r, c(0.0, s), 1e-9);
        assert_eq!(up.multiplicity, 2);
        assert_eq!(up.center, find(&r, c(0.0, -s), 1e-9).center.conj());
    }

    #[test]
    fn triple_real_root() {
        let r = real_poly_roots(&[-1.0, 3.0, -3.0, 1.0], &tol()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 3);
        assert!((r[0].center - c(1.0, 0.0)).norm() < 1e-10);
        assert_eq!(r[0].center.im, 0.0);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(real_poly_roots(&[3.0], &tol()).is_err());
        assert!(real_poly_roots::<f64>(&[], &tol()).is_err());
        assert!(real_poly_roots(&[0.0, 0.0], &tol()).is_err());
    }

    #[test]
    fn roots_at_origin() {
        // z^3 (z - 2)
        let r = real_poly_roots(&[0.0, 0.0, 0.0, -2.0, 1.0], &tol()).unwrap();
        assert_eq!(find(&r, c(0.0, 0.0), 1e-300).multiplicity, 3);
        assert_eq!(find(&r, c(2.0, 0.0), 1e-14).multiplicity, 1);
    }

    #[test]
    fn complex_coefficients() {
        let roots = [c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0)];
        let p = CPoly::from_roots(c(0.5, -2.0), &roots);
        let r = complex_roots(&p, &tol()).unwrap();
        assert_eq!(r.len(), 3);
        for z in roots {
            find(&r, z, 1e-12);
        }
    }

    #[test]
    fn close_but_distinct_roots_stay_separate() {
        let p = CPoly::from_roots(c(1.0, 0.0), &[c(1.0, 0.0), c(1.002, 0.0), c(-2.0, 0.5)]);
        let r = complex_roots(&p, &tol()).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|x| x.multiplicity == 1));
    }

    #[test]
    fn mixed_multiplicities() {
        let a = c(0.5, 1.5);
        let p = CPoly::from_roots(c(2.0, 0.0), &[a, a, a.conj(), a.conj(), c(-1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(4.0, 0.0)]);
        let r = complex_roots(&p, &tol()).unwrap();
        assert_eq!(find(&r, a, 1e-9).multiplicity, 2);
        assert_eq!(find(&r, a.conj(), 1e-9).multiplicity, 2);
        assert_eq!(find(&r, c(-1.0, 0.0), 1e-9).multiplicity, 3);
        assert_eq!(find(&r, c(4.0, 0.0), 1e-12).multiplicity, 1);
    }

    #[test]
    fn wilkinson_like_degree_twelve() {
        let roots: Vec<_> = (1..=12).map(|k| c(k as f64 * 0.25, 0.0)).collect();
        let p = CPoly::from_roots(c(1.0, 0.0), &roots);
        let r = complex_roots(&p, &tol()).unwrap();
        assert_eq!(r.iter().map(|x| x.multiplicity).sum::<usize>(), 12);
        for z in roots {
            find(&r, z, 1e-6);
        }
    }

    #[test]
    fn f32_roots() {
        let t = Tolerances::for_scalar::<f32>();
        let r = real_poly_roots(&[2.0f32, 0.0, 1.0], &t).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| (x.center.norm() - 2f32.sqrt()).abs() < 1e-5));
    }
}
