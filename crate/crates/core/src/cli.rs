//! The `qgl` command line: `analyze`, `verify`, `factor`, `bound`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cpoly::CPoly;
use crate::error::Error;
use crate::gauss_lucas::bound::{modulus_lower_bound, ModulusBound};
use crate::gauss_lucas::campaign::{run_campaign, CampaignKind, CampaignReport, InstanceOutcome};
use crate::gauss_lucas::factor::{fejer_riesz_factor, MFactor};
use crate::gauss_lucas::{verify_gauss_lucas, verify_real_case, CriticalCheck, GlReport};
use crate::hull::{hull_membership_slice, HullOutcome};
use crate::poly::QPoly;
use crate::quaternion::{format_sig, UnitImaginary};
use crate::roots::zeros::{critical_points, symmetrization_zero_set, zero_set, ZeroSet};
use crate::tolerances::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BREAKDOWN: i32 = 3;

/// Largest breakdown fraction a passing campaign may contain.
pub const MAX_BREAKDOWN_RATE: f64 = 0.01;

#[derive(Debug, Parser)]
#[command(name = "qgl", version, about = "Quaternionic polynomial zeros and Gauss-Lucas hull certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zero set, critical points, hull verdicts and modulus bound of one polynomial.
    Analyze(InputArgs),
    /// Randomized campaign over seeded random polynomials.
    Verify(VerifyArgs),
    /// Factor the symmetrization restricted to a slice as M(z) conj(M(conj z)).
    Factor(FactorArgs),
    /// Lower bound on the largest zero modulus of P or its conjugate.
    Bound(InputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, env = "QL_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Hull acceptance threshold, relative to 1 + |q|.
    #[arg(long)]
    pub eps_hull: Option<f64>,
    /// Zero residual threshold, relative to scale(P).
    #[arg(long)]
    pub tol_zero: Option<f64>,
    /// Factorization residual threshold.
    #[arg(long)]
    pub tol_factor: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON file holding `[[w,x,y,z], ...]` or `{"coeffs": [...]}`, ascending degree.
    #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
    pub input: Option<PathBuf>,
    /// Inline coefficients, e.g. `[[0,0,1,0],[0,1,0,0],[0.5,0,0,0]]`.
    #[arg(long)]
    pub coeffs: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Random real-coefficient polynomials checked against their own zero set.
    #[arg(long)]
    pub real: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Slice unit as a vector `[x,y,z]`; normalized.
    #[arg(long, default_value = "[1,0,0]")]
    pub slice: String,
}

/// Failure of a command, with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::ZeroDivisor | Error::AmbiguousSlice(_) => EXIT_USAGE,
            Error::NumericalBreakdown { .. } | Error::NotNonnegative(_) | Error::HypothesisViolated(_) => {
                EXIT_BREAKDOWN
            }
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Rendered report plus exit code.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl CommonArgs {
    pub fn tolerances(&self) -> Result<Tolerances, Failure> {
        let mut tol = Tolerances::default();
        for (name, v, slot) in [
            ("--eps-hull", self.eps_hull, &mut tol.hull),
            ("--tol-zero", self.tol_zero, &mut tol.zero),
            ("--tol-factor", self.tol_factor, &mut tol.factor),
        ] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Failure::usage(format!("{name} must be a positive number")));
                }
                *slot = v;
            }
        }
        Ok(tol)
    }
}

/// Parses `[[w,x,y,z], ...]` or `{"coeffs": [...]}`.
pub fn parse_poly(text: &str) -> Result<QPoly<f64>, Failure> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("malformed JSON: {e}")))?;
    let value = if value.is_array() {
        serde_json::json!({ "coeffs": value })
    } else {
        value
    };
    serde_json::from_value(value).map_err(|e| Failure::usage(format!("bad coefficients: {e}")))
}

impl InputArgs {
    pub fn poly(&self) -> Result<QPoly<f64>, Failure> {
        let text = match (&self.input, &self.coeffs) {
            (Some(path), _) => std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?,
            (None, Some(c)) => c.clone(),
            (None, None) => return Err(Failure::usage("pass --input FILE or --coeffs JSON")),
        };
        let p = parse_poly(&text)?;
        match p.degree() {
            None => Err(Failure::usage("the zero polynomial")),
            Some(0) => Err(Failure::usage("a constant polynomial has no zeros")),
            Some(_) => Ok(p),
        }
    }
}

fn render<R: Serialize>(format: Format, report: &R, text: impl FnOnce(&R) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn num(v: f64) -> String {
    format_sig(v, 6)
}

fn write_zero_set(out: &mut String, zs: &ZeroSet<f64>) {
    if zs.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for z in &zs.isolated {
        let _ = writeln!(out, "  isolated  {}  mult {}  residual {:.1e}", z.q, z.mult, z.residual);
    }
    for s in &zs.spheres {
        let _ = writeln!(
            out,
            "  sphere    x = {}, y = {}  mult {}  residual {:.1e}",
            num(s.x),
            num(s.y),
            s.mult,
            s.residual
        );
    }
}

fn write_checks(out: &mut String, checks: &[CriticalCheck<f64>]) {
    if checks.is_empty() {
        let _ = writeln!(out, "  (no critical points)");
    }
    for c in checks {
        match &c.outcome {
            HullOutcome::Inside(cert) => {
                let _ = writeln!(out, "  {}  inside, slack {:.1e}", c.q, cert.slack);
                for (p, w) in cert.points.iter().zip(&cert.weights) {
                    let _ = writeln!(out, "      {}  x  {}", num(*w), p);
                }
            }
            HullOutcome::Outside { distance } => {
                let _ = writeln!(out, "  {}  OUTSIDE, distance {}", c.q, num(*distance));
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundReport {
    #[serde(flatten)]
    pub bound: ModulusBound<f64>,
    pub max_zero_modulus: f64,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub coeffs: QPoly<f64>,
    pub zero_set: ZeroSet<f64>,
    pub critical_points: ZeroSet<f64>,
    pub symmetrization: Vec<f64>,
    pub symmetrization_zero_set: ZeroSet<f64>,
    /// Critical points against the hull of the zero set of `P` itself.
    pub against_zero_set: Vec<CriticalCheck<f64>>,
    /// Critical points against the hull of the zero set of `P^s`.
    pub gauss_lucas: GlReport<f64>,
    pub real_case: Option<GlReport<f64>>,
    pub bound: Option<BoundReport>,
}

pub fn cmd_analyze(args: &InputArgs) -> Result<Outcome, Failure> {
    let tol = args.common.tolerances()?;
    let p = args.poly()?;
    let seed = args.common.seed;
    let zs = zero_set(&p, &tol)?;
    let crit = critical_points(&p, &tol)?;
    let sym_zs = symmetrization_zero_set(&p, &tol)?;

    let (gl, real_case) = if p.degree() >= Some(2) {
        let real = if p.has_real_coeffs() {
            Some(verify_real_case(&p, &tol, seed)?)
        } else {
            None
        };
        (verify_gauss_lucas(&p, &tol, seed)?, real)
    } else {
        let empty = GlReport {
            id: "input".into(),
            verdict: crate::gauss_lucas::Verdict::Verified,
            tolerances: tol,
            seed,
            critical_points: Vec::new(),
        };
        (empty, None)
    };
    let mut against = Vec::new();
    for c in &gl.critical_points {
        against.push(CriticalCheck {
            q: c.q,
            outcome: hull_membership_slice(c.q, &zs, &tol)?,
        });
    }
    let bound = modulus_lower_bound(&p).ok().map(|b| BoundReport {
        bound: b,
        max_zero_modulus: sym_zs.max_modulus().unwrap_or(0.0),
    });

    let verified = gl.is_verified() && real_case.as_ref().is_none_or(|r| r.is_verified());
    let report = AnalyzeReport {
        symmetrization: p.symmetrize_real(),
        coeffs: p,
        zero_set: zs,
        critical_points: crit,
        symmetrization_zero_set: sym_zs,
        against_zero_set: against,
        gauss_lucas: gl,
        real_case,
        bound,
    };
    let output = render(args.common.format, &report, |r| {
        let mut s = String::new();
        let _ = writeln!(s, "degree {}", r.coeffs.degree().unwrap_or(0));
        let _ = writeln!(s, "zeros of P:");
        write_zero_set(&mut s, &r.zero_set);
        let _ = writeln!(s, "critical points (zeros of P'):");
        write_zero_set(&mut s, &r.critical_points);
        let _ = writeln!(
            s,
            "symmetrization P^s: [{}]",
            r.symmetrization.iter().map(|&v| num(v)).collect::<Vec<_>>().join(", ")
        );
        let _ = writeln!(s, "zeros of P^s:");
        write_zero_set(&mut s, &r.symmetrization_zero_set);
        let _ = writeln!(s, "critical points vs Kull(Z_P):");
        write_checks(&mut s, &r.against_zero_set);
        let _ = writeln!(s, "critical points vs Kull(Z_P^s): {:?}", r.gauss_lucas.verdict);
        write_checks(&mut s, &r.gauss_lucas.critical_points);
        if let Some(rc) = &r.real_case {
            let _ = writeln!(s, "real-coefficient case vs Kull(Z_P): {:?}", rc.verdict);
        }
        if let Some(b) = &r.bound {
            let _ = writeln!(
                s,
                "modulus bound {} (n = {}), largest zero modulus {}",
                num(b.bound.bound),
                b.bound.n,
                num(b.max_zero_modulus)
            );
        }
        s
    });
    Ok(Outcome {
        output,
        code: if verified { EXIT_OK } else { EXIT_VIOLATED },
    })
}

pub fn campaign_exit_code(r: &CampaignReport) -> i32 {
    if r.breakdown_rate() > MAX_BREAKDOWN_RATE {
        EXIT_BREAKDOWN
    } else if r.violated > 0 {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    if args.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let tol = args.common.tolerances()?;
    let kind = if args.real {
        CampaignKind::RealCoefficients
    } else {
        CampaignKind::Factored
    };
    let report = run_campaign(kind, args.common.seed, args.trials, &tol);
    let code = campaign_exit_code(&report);
    let output = render(args.common.format, &report, |r| {
        let mut s = String::new();
        let _ = writeln!(s, "campaign {:?}, seed {}, {} trials", r.kind, r.seed, r.trials);
        let _ = writeln!(
            s,
            "verified {}  violated {}  breakdowns {}  critical points {}  max slack {:.1e}",
            r.verified, r.violated, r.breakdowns, r.critical_points, r.max_slack
        );
        for f in &r.failures {
            let what = match &f.outcome {
                InstanceOutcome::Violated { report } => format!("violated, distance {}", num(report.worst_violation())),
                InstanceOutcome::Breakdown { error } => format!("breakdown: {error}"),
                InstanceOutcome::Verified { .. } => continue,
            };
            let coeffs = serde_json::to_string(f.coeffs.coeffs()).expect("coefficients serialize");
            let _ = writeln!(s, "  #{} {what}\n    qgl analyze --coeffs '{coeffs}'", f.index);
        }
        s
    });
    Ok(Outcome { output, code })
}

#[derive(Debug, Serialize)]
pub struct FactorReport {
    pub unit: UnitImaginary<f64>,
    pub q_coeffs: CPoly<f64>,
    #[serde(flatten)]
    pub factor: MFactor<f64>,
}

pub fn cmd_factor(args: &FactorArgs) -> Result<Outcome, Failure> {
    let tol = args.input.common.tolerances()?;
    let p = args.input.poly()?;
    let v: [f64; 3] =
        serde_json::from_str(&args.slice).map_err(|e| Failure::usage(format!("--slice expects [x,y,z]: {e}")))?;
    let unit = UnitImaginary::from_vector(v).map_err(|_| Failure::usage("--slice must be a nonzero vector"))?;
    let q = p.restrict_to_slice(unit).symmetrized();
    let factor = fejer_riesz_factor(&q, &tol)?;
    let report = FactorReport {
        unit,
        q_coeffs: q,
        factor,
    };
    let output = render(args.input.common.format, &report, |r| {
        let c = |z: &num_complex::Complex<f64>| format!("({} + {} I)", num(z.re), num(z.im));
        let mut s = String::new();
        let _ = writeln!(s, "slice unit {}", r.unit.get());
        let _ = writeln!(s, "Q: [{}]", r.q_coeffs.coeffs.iter().map(c).collect::<Vec<_>>().join(", "));
        let _ = writeln!(s, "M: [{}]", r.factor.m_coeffs.iter().map(c).collect::<Vec<_>>().join(", "));
        let _ = writeln!(s, "residual {:.1e}", r.factor.residual);
        s
    });
    Ok(Outcome { output, code: EXIT_OK })
}

pub fn cmd_bound(args: &InputArgs) -> Result<Outcome, Failure> {
    let tol = args.common.tolerances()?;
    let p = args.poly()?;
    let bound = modulus_lower_bound(&p)?;
    let zs = symmetrization_zero_set(&p, &tol)?;
    let report = BoundReport {
        bound,
        max_zero_modulus: zs.max_modulus().unwrap_or(0.0),
    };
    let output = render(args.common.format, &report, |r| {
        format!(
            "bound {} (n = {}, b_2m = {})\nlargest zero modulus of P or P^c: {}\n",
            num(r.bound.bound),
            r.bound.n,
            num(r.bound.b_2m),
            num(r.max_zero_modulus)
        )
    });
    Ok(Outcome { output, code: EXIT_OK })
}

fn common(cmd: &Command) -> &CommonArgs {
    match cmd {
        Command::Analyze(a) | Command::Bound(a) => &a.common,
        Command::Verify(v) => &v.common,
        Command::Factor(f) => &f.input.common,
    }
}

/// Runs a parsed command line, writing the report, and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Verify(v) => cmd_verify(v),
        Command::Factor(f) => cmd_factor(f),
        Command::Bound(b) => cmd_bound(b),
    };
    match result {
        Ok(outcome) => {
            let written = match &common(&cli.command).out {
                Some(path) => std::fs::write(path, &outcome.output),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(outcome.output.as_bytes())
                }
            };
            if let Err(e) = written {
                eprintln!("qgl: cannot write report: {e}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(f) => {
            eprintln!("qgl: {}", f.message);
            f.code
        }
    }
}
