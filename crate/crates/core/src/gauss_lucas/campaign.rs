//! Seeded randomized verification campaigns.
//!
//! Instance `i` of a campaign with seed `s` is drawn from ChaCha8 seeded with
//! `s` on stream `i`, so every instance can be reproduced on its own and the
//! parallel run is merged back in index order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{verify_gauss_lucas_with_id, verify_real_case, GlReport};
use crate::poly::QPoly;
use crate::quaternion::Quaternion;
use crate::tolerances::Tolerances;

/// Degrees and radius of random factored polynomials.
pub const FACTORED_DEGREES: (usize, usize) = (2, 6);
pub const ROOT_RADIUS: f64 = 5.0;
/// Degrees of random real-coefficient polynomials.
pub const REAL_DEGREES: (usize, usize) = (2, 8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    /// `(q - α_1) * … * (q - α_n)` against `Kull(Z_{P^s})`.
    Factored,
    /// Real coefficients against `Kull(Z_P)`.
    RealCoefficients,
}

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A point drawn uniformly from the closed ball `|α| ≤ radius` in `R^4`.
pub fn random_in_ball<R: Rng>(rng: &mut R, radius: f64) -> Quaternion<f64> {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-radius..=radius));
        let q = Quaternion::from(v);
        if q.norm() <= radius {
            return q;
        }
    }
}

/// Factors `α_1, …, α_n` of a random factored instance.
pub fn random_factors<R: Rng>(rng: &mut R) -> Vec<Quaternion<f64>> {
    let n = rng.random_range(FACTORED_DEGREES.0..=FACTORED_DEGREES.1);
    (0..n).map(|_| random_in_ball(rng, ROOT_RADIUS)).collect()
}

/// Coefficients uniform in `[-5, 5]`, leading coefficient at least `1/2` in modulus.
pub fn random_real_coeffs<R: Rng>(rng: &mut R) -> Vec<f64> {
    let n = rng.random_range(REAL_DEGREES.0..=REAL_DEGREES.1);
    let mut c: Vec<f64> = (0..=n).map(|_| rng.random_range(-5.0..=5.0)).collect();
    let lead = rng.random_range(0.5..=5.0);
    c[n] = if rng.random::<bool>() { lead } else { -lead };
    c
}

pub fn instance(kind: CampaignKind, seed: u64, index: u64) -> QPoly<f64> {
    let mut rng = instance_rng(seed, index);
    match kind {
        CampaignKind::Factored => QPoly::from_factors(&random_factors(&mut rng)),
        CampaignKind::RealCoefficients => QPoly::from_real(&random_real_coeffs(&mut rng)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum InstanceOutcome {
    Verified { critical_points: usize, max_slack: f64 },
    Violated { report: GlReport<f64> },
    Breakdown { error: String },
}

/// Everything needed to rerun one failing instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub index: u64,
    pub coeffs: QPoly<f64>,
    pub outcome: InstanceOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub kind: CampaignKind,
    pub seed: u64,
    pub trials: u64,
    pub tolerances: Tolerances,
    pub verified: u64,
    pub violated: u64,
    pub breakdowns: u64,
    pub critical_points: u64,
    pub max_slack: f64,
    pub failures: Vec<Failure>,
}

impl CampaignReport {
    pub fn all_verified(&self) -> bool {
        self.verified == self.trials
    }

    pub fn breakdown_rate(&self) -> f64 {
        self.breakdowns as f64 / self.trials.max(1) as f64
    }
}

/// Runs one instance. The report seed is the campaign seed mixed with the
/// index, which also drives the random slice used for spherical critical points.
pub fn run_instance(kind: CampaignKind, seed: u64, index: u64, tol: &Tolerances) -> (QPoly<f64>, InstanceOutcome) {
    let p = instance(kind, seed, index);
    let report_seed = seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let result = match kind {
        CampaignKind::Factored => verify_gauss_lucas_with_id(&p, tol, report_seed, &format!("{seed}:{index}")),
        CampaignKind::RealCoefficients => verify_real_case(&p, tol, report_seed).map(|mut r| {
            r.id = format!("{seed}:{index}");
            r
        }),
    };
    let outcome = match result {
        Ok(r) if r.is_verified() => InstanceOutcome::Verified {
            critical_points: r.critical_points.len(),
            max_slack: r
                .critical_points
                .iter()
                .map(|c| c.outcome.distance())
                .fold(0.0, f64::max),
        },
        Ok(r) => InstanceOutcome::Violated { report: r },
        Err(e) => InstanceOutcome::Breakdown { error: e.to_string() },
    };
    (p, outcome)
}

pub fn run_campaign(kind: CampaignKind, seed: u64, trials: u64, tol: &Tolerances) -> CampaignReport {
    let outcomes: Vec<(QPoly<f64>, InstanceOutcome)> = (0..trials)
        .into_par_iter()
        .map(|i| run_instance(kind, seed, i, tol))
        .collect();
    let mut report = CampaignReport {
        kind,
        seed,
        trials,
        tolerances: *tol,
        verified: 0,
        violated: 0,
        breakdowns: 0,
        critical_points: 0,
        max_slack: 0.0,
        failures: Vec::new(),
    };
    for (index, (coeffs, outcome)) in (0u64..).zip(outcomes) {
        match &outcome {
            InstanceOutcome::Verified {
                critical_points,
                max_slack,
            } => {
                report.verified += 1;
                report.critical_points += *critical_points as u64;
                report.max_slack = report.max_slack.max(*max_slack);
                continue;
            }
            InstanceOutcome::Violated { .. } => report.violated += 1,
            InstanceOutcome::Breakdown { .. } => report.breakdowns += 1,
        }
        report.failures.push(Failure {
            seed,
            index,
            coeffs,
            outcome,
        });
    }
    report
}
