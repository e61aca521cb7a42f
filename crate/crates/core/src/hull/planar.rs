//! Nearest point of a planar convex hull, returned as a convex combination of
//! at most three input points.

use crate::Real;

pub type Point2<T> = [T; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarCombination<T> {
    /// `(index into the input, weight)`; weights are in `[0, 1]` and sum to one.
    pub terms: Vec<(usize, T)>,
    /// Distance from the query to the hull.
    pub distance: T,
}

#[inline]
fn cross<T: Real>(o: Point2<T>, a: Point2<T>, b: Point2<T>) -> T {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

#[inline]
fn dist<T: Real>(a: Point2<T>, b: Point2<T>) -> T {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Counter-clockwise hull vertex indices (monotone chain, collinear points dropped).
pub fn convex_hull<T: Real>(pts: &[Point2<T>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| {
        pts[a][0]
            .partial_cmp(&pts[b][0])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(pts[a][1].partial_cmp(&pts[b][1]).unwrap_or(std::cmp::Ordering::Equal))
    });
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[i]) <= T::zero()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[i]) <= T::zero()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Closest point of segment `[a, b]` to `q` as `(t, distance)`, point = `a + t (b - a)`.
fn segment_nearest<T: Real>(a: Point2<T>, b: Point2<T>, q: Point2<T>) -> (T, T) {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == T::zero() {
        T::zero()
    } else {
        (((q[0] - a[0]) * d[0] + (q[1] - a[1]) * d[1]) / len2)
            .max(T::zero())
            .min(T::one())
    };
    let p = [a[0] + t * d[0], a[1] + t * d[1]];
    (t, dist(p, q))
}

fn barycentric<T: Real>(a: Point2<T>, b: Point2<T>, c: Point2<T>, q: Point2<T>) -> Option<[T; 3]> {
    let area = cross(a, b, c);
    if area == T::zero() {
        return None;
    }
    let wa = cross(q, b, c) / area;
    let wb = cross(a, q, c) / area;
    Some([wa, wb, T::one() - wa - wb])
}

fn normalized<T: Real>(mut terms: Vec<(usize, T)>) -> Vec<(usize, T)> {
    for t in terms.iter_mut() {
        t.1 = t.1.max(T::zero()).min(T::one());
    }
    let sum = terms.iter().fold(T::zero(), |s, t| s + t.1);
    if sum > T::zero() {
        for t in terms.iter_mut() {
            t.1 = t.1 / sum;
        }
    }
    terms.retain(|t| t.1 > T::zero());
    terms
}

/// Nearest point of `conv(pts)` to `q`. `pts` must be nonempty.
pub fn nearest_in_hull<T: Real>(pts: &[Point2<T>], q: Point2<T>) -> PlanarCombination<T> {
    assert!(!pts.is_empty(), "hull of an empty point set");
    let hull = convex_hull(pts);
    let combine = |terms: Vec<(usize, T)>| {
        let terms = normalized(terms);
        let mut p = [T::zero(), T::zero()];
        for &(i, w) in &terms {
            p[0] += w * pts[i][0];
            p[1] += w * pts[i][1];
        }
        PlanarCombination {
            distance: dist(p, q),
            terms,
        }
    };
    match hull.len() {
        1 => return combine(vec![(hull[0], T::one())]),
        2 => {
            let (t, _) = segment_nearest(pts[hull[0]], pts[hull[1]], q);
            return combine(vec![(hull[0], T::one() - t), (hull[1], t)]);
        }
        _ => {}
    }

    let n = hull.len();
    let inside = (0..n).all(|e| cross(pts[hull[e]], pts[hull[(e + 1) % n]], q) >= T::zero());
    if inside {
        // fan from the first vertex; keep the triangle whose smallest weight is largest
        let mut best: Option<[T; 3]> = None;
        let mut best_tri = 1;
        for t in 1..n - 1 {
            if let Some(w) = barycentric(pts[hull[0]], pts[hull[t]], pts[hull[t + 1]], q) {
                let score = w[0].min(w[1]).min(w[2]);
                if best.is_none_or(|b| score > b[0].min(b[1]).min(b[2])) {
                    best = Some(w);
                    best_tri = t;
                }
            }
        }
        if let Some(w) = best {
            let inside = combine(vec![
                (hull[0], w[0]),
                (hull[best_tri], w[1]),
                (hull[best_tri + 1], w[2]),
            ]);
            // rounding on the boundary can leave a better edge answer
            let edge = nearest_edge(pts, &hull, q);
            let edge = combine(edge);
            return if edge.distance < inside.distance { edge } else { inside };
        }
    }
    combine(nearest_edge(pts, &hull, q))
}

fn nearest_edge<T: Real>(pts: &[Point2<T>], hull: &[usize], q: Point2<T>) -> Vec<(usize, T)> {
    let n = hull.len();
    let mut best = (T::infinity(), 0usize, T::zero());
    for e in 0..n {
        let (a, b) = (hull[e], hull[(e + 1) % n]);
        let (t, d) = segment_nearest(pts[a], pts[b], q);
        if d < best.0 {
            best = (d, e, t);
        }
    }
    let (_, e, t) = best;
    vec![(hull[e], T::one() - t), (hull[(e + 1) % n], t)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_hull_drops_interior_and_collinear_points() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0]];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!(!h.contains(&4) && !h.contains(&5));
    }

    #[test]
    fn interior_point_weights_reproduce_query() {
        let pts = [[0.0, 0.0], [4.0, 0.0], [0.0, 3.0], [4.0, 3.0]];
        let q = [1.0, 2.0];
        let c = nearest_in_hull(&pts, q);
        assert!(c.distance < 1e-15);
        assert!(c.terms.len() <= 3);
        let sum: f64 = c.terms.iter().map(|t| t.1).sum();
        assert!((sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn outside_point_distance() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let c = nearest_in_hull(&pts, [1.0, 1.0]);
        assert!((c.distance - 0.5f64.sqrt()).abs() < 1e-15);
        let c = nearest_in_hull(&pts, [-2.0, 0.5]);
        assert!((c.distance - 2.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_hulls() {
        let c = nearest_in_hull(&[[2.0, 1.0]], [2.0, 1.0]);
        assert_eq!(c.terms, vec![(0, 1.0)]);
        let seg: [[f64; 2]; 3] = [[-1.0, 0.0], [1.0, 0.0], [0.0, 0.0]];
        let c = nearest_in_hull(&seg, [0.5, 0.0]);
        assert!(c.distance < 1e-15);
        let c = nearest_in_hull(&seg, [0.5, 2.0]);
        assert!((c.distance - 2.0).abs() < 1e-15);
    }
}
