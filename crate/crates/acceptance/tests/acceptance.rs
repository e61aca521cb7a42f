//! Acceptance criteria, each run at its stated tolerance. Prints one
//! `PASS`/`FAIL` line per criterion and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use clap::Parser;
use num_complex::Complex;
use quatpoly::cli::{run, Cli, EXIT_OK};
use quatpoly::gauss_lucas::factor::{check_l_identity, fejer_riesz_factor, l_identity_residual};
use quatpoly::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);
/// `(P1, P2, sample points)` on one slice.
type SliceInstance = (CPoly<f64>, CPoly<f64>, Vec<Complex<f64>>);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(20_240_601);
    r.set_stream(stream);
    r
}

fn random_quat<R: Rng>(r: &mut R, range: f64) -> Quat {
    Quat::new(
        r.random_range(-range..range),
        r.random_range(-range..range),
        r.random_range(-range..range),
        r.random_range(-range..range),
    )
}

fn random_poly<R: Rng>(r: &mut R, max_degree: usize) -> Poly {
    let n = r.random_range(1..=max_degree);
    let mut c: Vec<Quat> = (0..n).map(|_| random_quat(r, 3.0)).collect();
    let lead = random_quat(r, 3.0);
    c.push(lead * ((0.5 + lead.norm()) / lead.norm().max(1e-300)));
    Poly::new(c)
}

fn random_cpoly<R: Rng>(r: &mut R, max_degree: usize) -> CPoly<f64> {
    let n = r.random_range(0..=max_degree);
    CPoly::new(
        (0..=n)
            .map(|_| Complex::new(r.random_range(-3.0..3.0), r.random_range(-3.0..3.0)))
            .collect(),
    )
}

fn random_unit<R: Rng>(r: &mut R) -> Unit {
    loop {
        let v = [r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), r.random_range(-1.0..1.0f64)];
        if v.iter().map(|c| c * c).sum::<f64>() > 1e-4 {
            return Unit::from_vector(v).unwrap();
        }
    }
}

fn half_square() -> Poly {
    Poly::new(vec![Quat::j(), Quat::i(), Quat::real(0.5)])
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let tol = Tolerances::default();
    let p = half_square();
    let zs = zero_set(&p, &tol).map_err(|e| e.to_string())?;
    let crit = critical_points(&p, &tol).map_err(|e| e.to_string())?;
    let outside = hull_membership_slice(-Quat::i(), &zs, &tol).map_err(|e| e.to_string())?;
    let ps = p.symmetrize();
    let sym = symmetrization_zero_set(&p, &tol).map_err(|e| e.to_string())?;
    let inside = hull_membership_slice(-Quat::i(), &sym, &tol).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let zero_ok = zs.spheres.is_empty()
        && zs.isolated.len() == 1
        && zs.isolated[0].mult == 2
        && (zs.isolated[0].q - Quat::new(0.0, -1.0, 0.0, -1.0)).norm() <= 1e-9;
    let crit_ok = crit.spheres.is_empty() && crit.isolated.len() == 1 && (crit.isolated[0].q + Quat::i()).norm() <= 1e-9;
    let dist_ok = !outside.is_inside() && (outside.distance() - 1.0).abs() <= 1e-9;
    let want = [1.0, 0.0, 1.0, 0.0, 0.25];
    let ps_ok = ps.coeffs().len() == 5
        && ps
            .coeffs()
            .iter()
            .zip(want)
            .all(|(c, w)| (*c - Quat::real(w)).norm() <= 1e-12);
    let sym_ok = sym.isolated.is_empty()
        && sym.spheres.len() == 1
        && sym.spheres[0].x.abs() <= 1e-9
        && (sym.spheres[0].y - 2f64.sqrt()).abs() <= 1e-9;
    let slack_ok = inside.certificate().is_some_and(|c| c.slack <= 1e-9);
    let time_ok = elapsed < Duration::from_millis(100);
    check(
        zero_ok && crit_ok && dist_ok && ps_ok && sym_ok && slack_ok && time_ok,
        format!(
            "Z_P ok {zero_ok}, Z_P' ok {crit_ok}, outside at {:.12} ({dist_ok}), P^s ok {ps_ok}, sphere ok {sym_ok}, \
             inside with slack {:.1e} ({slack_ok}), {elapsed:?}",
            outside.distance(),
            inside.certificate().map_or(f64::NAN, |c| c.slack)
        ),
    )
}

fn criterion_2() -> Outcome {
    let tol = Tolerances::default();
    let zs = zero_set(&Poly::from_real(&[1.0, 0.0, 1.0]), &tol).map_err(|e| e.to_string())?;
    let sphere_ok =
        zs.isolated.is_empty() && zs.spheres.len() == 1 && zs.spheres[0].x.abs() <= 1e-12 && (zs.spheres[0].y - 1.0).abs() <= 1e-12;
    let p = Poly::new(vec![Quat::k(), -(Quat::i() + Quat::j()), Quat::one()]);
    let zs = zero_set(&p, &tol).map_err(|e| e.to_string())?;
    let iso_ok = zs.spheres.is_empty() && zs.isolated.len() == 1 && zs.isolated[0].mult == 2 && (zs.isolated[0].q - Quat::i()).norm() <= 1e-8;
    let d = p.derivative().evaluate(Quat::i());
    let d_ok = (d - (Quat::i() - Quat::j())).norm() <= 1e-12 && (d.norm() - 2f64.sqrt()).abs() <= 1e-12;
    check(
        sphere_ok && iso_ok && d_ok,
        format!("q²+1 one sphere {sphere_ok}; isolated i double {iso_ok}; P'(i) = {d} ({d_ok})"),
    )
}

fn criterion_3() -> Outcome {
    let tol = Tolerances {
        hull: 1e-6,
        ..Tolerances::default()
    };
    let start = Instant::now();
    let r = run_campaign(CampaignKind::Factored, 42, 1000, &tol);
    let elapsed = start.elapsed();
    let detail = format!(
        "{} of {} verified, {} violated (worst {:.3}), {} breakdowns, {} critical points certified, {elapsed:?}",
        r.verified,
        r.trials,
        r.violated,
        r.failures
            .iter()
            .filter_map(|f| match &f.outcome {
                quatpoly::gauss_lucas::campaign::InstanceOutcome::Violated { report } => Some(report.worst_violation()),
                _ => None,
            })
            .fold(0.0, f64::max),
        r.breakdowns,
        r.critical_points,
    );
    check(
        r.violated == 0 && r.breakdown_rate() < 0.01 && elapsed < Duration::from_secs(60),
        detail,
    )
}

fn criterion_4() -> Outcome {
    let tol = Tolerances::default();
    let r = run_campaign(CampaignKind::RealCoefficients, 42, 500, &tol);
    check(
        r.all_verified(),
        format!(
            "{} of {} verified, {} critical points, max slack {:.1e}",
            r.verified, r.trials, r.critical_points, r.max_slack
        ),
    )
}

fn criterion_5() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(5);
    let (mut worst_star, mut worst_imag, mut worst_slice) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let p = random_poly(&mut r, 6);
        let q = random_poly(&mut r, 6);
        let at = random_quat(&mut r, 2.0);
        let pq = p.star_mul(&q);
        let direct = pq.evaluate(at);
        let pointwise = pointwise_star_eval(&p, &q, at, &tol);
        worst_star = worst_star.max((direct - pointwise).norm() / pq.scale_at(at));

        let scale = 1.0 + p.max_coeff_norm().powi(2);
        let imag = p.symmetrize().coeffs().iter().map(|c| c.im_norm()).fold(0.0, f64::max);
        worst_imag = worst_imag.max(imag / scale);

        let ps = Poly::from_real(&p.symmetrize_real());
        for _ in 0..20 {
            let u = random_unit(&mut r);
            let z = Complex::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
            let x = u.embed_complex(z);
            let got = u.embed_complex(p.restrict_to_slice(u).symmetrized().eval(z));
            worst_slice = worst_slice.max((ps.evaluate(x) - got).norm() / ps.scale_at(x));
        }
    }
    check(
        worst_star <= 1e-10 && worst_imag <= 1e-12 && worst_slice <= 1e-9,
        format!("pointwise {worst_star:.1e}, imaginary parts {worst_imag:.1e}, slice formula {worst_slice:.1e}"),
    )
}

fn factor_instances() -> Vec<SliceInstance> {
    let mut r = rng(6);
    (0..200)
        .map(|_| {
            let p1 = random_cpoly(&mut r, 6);
            let p2 = random_cpoly(&mut r, 6);
            let z = (0..100)
                .map(|_| Complex::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0)))
                .collect();
            (p1, p2, z)
        })
        .collect()
}

fn criterion_6a() -> Outcome {
    let tol = Tolerances::default();
    let mut worst = 0.0f64;
    let mut failed = 0;
    for (p1, p2, _) in factor_instances() {
        let q = p1.hermitian_square().add(&p2.hermitian_square());
        match fejer_riesz_factor(&q, &tol) {
            Ok(m) => worst = worst.max(m.residual / (1.0 + q.max_abs())),
            Err(_) => failed += 1,
        }
    }
    check(
        failed == 0 && worst <= 1e-8,
        format!("200 factorizations, {failed} failed, worst relative residual {worst:.1e}"),
    )
}

fn criterion_6b() -> Outcome {
    let tol = Tolerances::default();
    let mut holds = 0;
    let mut worst = 0.0f64;
    for (p1, p2, z) in factor_instances() {
        let q = p1.hermitian_square().add(&p2.hermitian_square());
        let Ok(m) = fejer_riesz_factor(&q, &tol) else { continue };
        if check_l_identity(&p1, &p2, &m, &z) {
            holds += 1;
        }
        worst = worst.max(l_identity_residual(&p1, &p2, &m, &z));
    }
    check(
        holds == 200,
        format!("z L(z) = z M'(z) conj(M(conj z)) holds on {holds} of 200 instances, worst relative residual {worst:.2}"),
    )
}

fn criterion_7() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(7);
    let mut worst_gap = f64::NEG_INFINITY;
    for _ in 0..500 {
        let p = random_poly(&mut r, 6);
        let b = modulus_lower_bound(&p).map_err(|e| e.to_string())?;
        let zs = symmetrization_zero_set(&p, &tol).map_err(|e| e.to_string())?;
        worst_gap = worst_gap.max(b.bound - zs.max_modulus().unwrap_or(0.0));
    }
    let mut worst_linear = 0.0f64;
    for _ in 0..500 {
        let a = random_quat(&mut r, 5.0);
        let b = modulus_lower_bound(&Poly::linear(a)).map_err(|e| e.to_string())?;
        worst_linear = worst_linear.max((b.bound - a.w.abs()).abs());
    }
    check(
        worst_gap <= 1e-8 && worst_linear <= 1e-12,
        format!("largest bound - max modulus {worst_gap:.3}, linear |bound - |Re a|| {worst_linear:.1e}"),
    )
}

fn verify_json(run_id: usize) -> Result<Vec<u8>, String> {
    let path = std::env::temp_dir().join(format!("qgl-acceptance-{}-{run_id}.json", std::process::id()));
    let out = path.to_str().ok_or("temp path is not UTF-8")?;
    let cli = Cli::try_parse_from(["qgl", "verify", "--seed", "42", "--trials", "100", "--format", "json", "--out", out])
        .map_err(|e| e.to_string())?;
    let code = run(cli);
    let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
    std::fs::remove_file(&path).map_err(|e| e.to_string())?;
    // the default campaign contains violations, so only usage and breakdown codes are errors
    if code != EXIT_OK && code != quatpoly::cli::EXIT_VIOLATED {
        return Err(format!("verify exited with {code}"));
    }
    Ok(bytes)
}

fn criterion_8() -> Outcome {
    let a = verify_json(0)?;
    let b = verify_json(1)?;
    check(
        a == b,
        format!("two runs, {} bytes each, identical: {}", a.len(), a == b),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1", "counterexample regression", criterion_1),
        ("2", "introductory examples", criterion_2),
        ("3", "hull inclusion on 1000 random factored polynomials", criterion_3),
        ("4", "real-coefficient campaign", criterion_4),
        ("5", "algebraic identities", criterion_5),
        ("6a", "factorization residual", criterion_6a),
        ("6b", "product identity for L", criterion_6b),
        ("7", "modulus bound", criterion_7),
        ("8", "determinism of verify", criterion_8),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("PASS criterion {id} ({name}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}): {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
