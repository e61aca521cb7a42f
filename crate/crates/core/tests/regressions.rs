use quatpoly::gauss_lucas::factor::{check_l_identity, fejer_riesz_factor, symmetric_l_identity_residual};
use quatpoly::gauss_lucas::slice_critical_points;
use quatpoly::hull::{hull_membership_4d, SPHERE_SAMPLES};
use quatpoly::*;

fn q(w: f64, x: f64, y: f64, z: f64) -> Quat {
    Quat::new(w, x, y, z)
}

/// `q²/2 + q i + j`: a double zero whose hull misses the critical point.
fn half_square() -> Poly {
    Poly::new(vec![Quat::j(), Quat::i(), Quat::real(0.5)])
}

/// `(q - i) * (q - j) * (q + i) = q³ - q² j + q (1 + 2k) + j`.
fn unit_sphere_cubic() -> Poly {
    Poly::from_factors(&[Quat::i(), Quat::j(), -Quat::i()])
}

#[test]
fn half_square_zero_structure() {
    let tol = Tolerances::default();
    let p = half_square();
    let zs = zero_set(&p, &tol).unwrap();
    assert!(zs.spheres.is_empty());
    assert_eq!(zs.isolated.len(), 1);
    assert_eq!(zs.isolated[0].mult, 2);
    assert!((zs.isolated[0].q - q(0.0, -1.0, 0.0, -1.0)).norm() < 1e-9);

    let crit = critical_points(&p, &tol).unwrap();
    assert_eq!(crit.isolated.len(), 1);
    assert!((crit.isolated[0].q + Quat::i()).norm() < 1e-12);

    let out = hull_membership_slice(-Quat::i(), &zs, &tol).unwrap();
    assert!(!out.is_inside());
    assert!((out.distance() - 1.0).abs() < 1e-9);

    let sym = symmetrization_zero_set(&p, &tol).unwrap();
    assert!(sym.isolated.is_empty());
    assert_eq!(sym.spheres.len(), 1);
    assert!(sym.spheres[0].x.abs() < 1e-9 && (sym.spheres[0].y - 2f64.sqrt()).abs() < 1e-9);
    let report = verify_gauss_lucas(&p, &tol, 0).unwrap();
    assert!(report.is_verified());
}

#[test]
fn half_square_four_d_cross_check() {
    let tol = Tolerances::default();
    let sym = symmetrization_zero_set(&half_square(), &tol).unwrap();
    let pts = sym.sampled_points(SPHERE_SAMPLES);
    assert!(hull_membership_4d(-Quat::i(), &pts, &tol).is_inside());
    let out = hull_membership_4d(-Quat::i(), &[q(0.0, -1.0, 0.0, -1.0)], &tol);
    assert!((out.distance() - 1.0).abs() < 1e-12);
}

#[test]
fn double_zero_at_i_with_nonvanishing_derivative() {
    // q² - q(i + j) + k = (q - i) * (q - j)
    let tol = Tolerances::default();
    let p = Poly::new(vec![Quat::k(), -(Quat::i() + Quat::j()), Quat::one()]);
    let zs = zero_set(&p, &tol).unwrap();
    assert_eq!(zs.isolated.len(), 1);
    assert!((zs.isolated[0].q - Quat::i()).norm() < 1e-8);
    assert_eq!(zs.isolated[0].mult, 2);
    let d = p.derivative().evaluate(Quat::i());
    assert!((d - (Quat::i() - Quat::j())).norm() < 1e-12);
    assert!((d.norm() - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn q_squared_plus_one_is_one_sphere() {
    let tol = Tolerances::default();
    let zs = zero_set(&Poly::from_real(&[1.0, 0.0, 1.0]), &tol).unwrap();
    assert!(zs.isolated.is_empty());
    assert_eq!(zs.spheres.len(), 1);
    assert!(zs.spheres[0].x.abs() < 1e-12 && (zs.spheres[0].y - 1.0).abs() < 1e-12);
}

/// Exact critical points of the unit-sphere cubic, from solving
/// `3q² - 2qj + 1 + 2k = 0` symbolically.
fn cubic_critical_points() -> [Quat; 2] {
    let s5 = 5f64.sqrt();
    let w = ((3.0 * s5 - 5.0) / 18.0).sqrt();
    let x = (1.0 + s5) / 6.0;
    let z = 5f64.powf(0.25) / 3.0;
    [q(w, x, 1.0 / 3.0, -z), q(-w, x, 1.0 / 3.0, z)]
}

#[test]
fn unit_sphere_cubic_escapes_the_symmetrization_hull() {
    let tol = Tolerances::default();
    let p = unit_sphere_cubic();
    let want = Poly::new(vec![Quat::j(), q(1.0, 0.0, 0.0, 2.0), -Quat::j(), Quat::one()]);
    assert_eq!(p, want);

    // P^s = (q² + 1)³, whose hull is the unit ball of the imaginary space
    let ps = p.symmetrize_real();
    for (a, b) in ps.iter().zip([1.0, 0.0, 3.0, 0.0, 3.0, 0.0, 1.0]) {
        assert!((a - b).abs() < 1e-12);
    }
    let exact = cubic_critical_points();
    for c in exact {
        assert!(p.derivative().evaluate(c).norm() < 1e-14);
        assert!(c.im_norm() < 1.0);
    }

    let crit = critical_points(&p, &tol).unwrap();
    assert_eq!(crit.isolated.len(), 2);
    for z in &crit.isolated {
        assert!(exact.iter().any(|c| (*c - z.q).norm() < 1e-12), "{}", z.q);
    }

    // outside by exactly |Re q|
    let report = verify_gauss_lucas(&p, &tol, 0).unwrap();
    assert!(!report.is_verified());
    for c in &report.critical_points {
        assert!(!c.outcome.is_inside());
        assert!((c.outcome.distance() - exact[0].w).abs() < 1e-12);
    }

    // the slice form agrees once the slices through the critical points are sampled
    let units: Vec<Unit> = exact.iter().map(|c| Unit::normalize(c.im()).unwrap()).collect();
    assert!(!slice_equivalence_check(&p, &units, &tol).unwrap());
    let z = slice_critical_points(&p, units[0], &tol).unwrap();
    assert_eq!(z.len(), 1);
}

#[test]
fn l_identity_on_the_half_square_slice() {
    let tol = Tolerances::default();
    let slice = half_square().restrict_to_slice(Unit::i());
    let m = fejer_riesz_factor(&slice.symmetrized(), &tol).unwrap();
    let samples: Vec<_> = (0..100)
        .map(|n| {
            let t = n as f64 * 0.37;
            num_complex::Complex::new(2.0 * t.cos() - 0.3, 1.5 * (1.7 * t).sin())
        })
        .collect();
    // the product identity is not an identity; its symmetric part is
    assert!(!check_l_identity(&slice.p1, &slice.p2, &m, &samples));
    assert!(symmetric_l_identity_residual(&slice.p1, &slice.p2, &m, &samples) < 1e-12);
    // both sides vanish at the origin
    assert!(check_l_identity(&slice.p1, &slice.p2, &m, &[num_complex::Complex::new(0.0, 0.0)]));
}

#[test]
fn single_precision_pipeline() {
    let tol = Tolerances::for_scalar::<f32>();
    let p: QPoly<f32> = half_square().cast();
    let zs = zero_set(&p, &tol).unwrap();
    assert_eq!(zs.count(), 2);
    assert!((zs.isolated[0].q - Quaternion::new(0.0f32, -1.0, 0.0, -1.0)).norm() < 1e-3);
    let r = verify_gauss_lucas(&p, &tol, 0).unwrap();
    assert!(r.is_verified());
}
