//! Seeded randomized verification sweeps.
//!
//! Each trial draws its inputs from its own ChaCha stream (`seed`, trial
//! index), so trials run in parallel and the merged report is identical for
//! a given seed regardless of scheduling.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::fd::check_derivative;
use crate::analysis::monotone::find_nonmonotone_witness;
use crate::analysis::ode::{defect_closed_form, ode_flow, OdeSpec};
use crate::coords::{s_to_x, Branch};
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::periodic::PeriodicMap;
use crate::solution::{reconstruct_p_on, BranchSolution};

pub const MAX_DEGREE: usize = 4;
pub const R_RANGE: (f64, f64) = (0.1, 10.0);
pub const K_RANGE: (f64, f64) = (0.5, 8.0);
pub const S_RANGE: (f64, f64) = (-10.0, 8.0);
pub const DERIVATIVE_S_RANGE: (f64, f64) = (-5.0, 5.0);
pub const ROUNDTRIP_POINTS: usize = 8;
pub const ODE_STEP: f64 = 1e-3;
/// Threshold for "periodic" in the ODE suite.
pub const ODE_PERIODIC_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Residual,
    Roundtrip,
    Derivative,
    Linearity,
    Witness,
    Ode,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Residual, Suite::Roundtrip, Suite::Derivative, Suite::Linearity, Suite::Witness, Suite::Ode];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Residual => "residual",
            Suite::Roundtrip => "roundtrip",
            Suite::Derivative => "derivative",
            Suite::Linearity => "linearity",
            Suite::Witness => "witness",
            Suite::Ode => "ode",
        }
    }

    /// Tolerance the suite is designed to meet.
    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Residual => 1e-10,
            Suite::Roundtrip => 1e-9,
            Suite::Derivative => 1e-5,
            Suite::Linearity => 1e-12,
            Suite::Witness => 0.0,
            Suite::Ode => ODE_PERIODIC_TOL,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

/// Everything needed to reproduce one trial.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TrialInputs {
    pub trial: usize,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<PeriodicMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<PeriodicMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub worst_error: f64,
    pub worst_inputs: TrialInputs,
    pub pass: bool,
}

pub fn run_suite(suite: Suite, trials: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::Usage("trials must be positive".into()));
    }
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(Error::Usage(format!("tolerance must be a non-negative number, got {tol}")));
    }
    let outcomes: Vec<(f64, TrialInputs)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let mut inputs = TrialInputs { trial, ..TrialInputs::default() };
            let error = match run_trial(suite, &mut rng, &mut inputs) {
                Ok(e) if e.is_nan() => f64::INFINITY,
                Ok(e) => e,
                Err(e) => {
                    inputs.failure = Some(e.to_string());
                    f64::INFINITY
                }
            };
            (error, inputs)
        })
        .collect();

    let (worst_error, worst_inputs) =
        outcomes.into_iter().reduce(|best, next| if next.0 > best.0 { next } else { best }).expect("trials > 0");
    Ok(VerificationReport { suite, trials, seed, tol, worst_error, worst_inputs, pass: worst_error <= tol })
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    rng.gen_range(lo..hi)
}

/// Rounds `s` to a multiple of `2^-40`, which makes `s + 1` exact.
fn dyadic(s: f64) -> f64 {
    const SCALE: f64 = (1u64 << 40) as f64;
    (s * SCALE).round() / SCALE
}

fn random_params(rng: &mut ChaCha8Rng, inputs: &mut TrialInputs) -> Result<EquationParams> {
    let r = uniform(rng, R_RANGE);
    let k = uniform(rng, K_RANGE);
    inputs.r = Some(r);
    inputs.k = Some(k);
    EquationParams::new(r, k)
}

fn random_map(rng: &mut ChaCha8Rng, min_degree: usize) -> PeriodicMap {
    let degree = rng.gen_range(min_degree..=MAX_DEGREE);
    let a0 = rng.gen_range(-1.0..1.0);
    let harmonics = (0..degree).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    PeriodicMap::new(a0, harmonics).expect("finite coefficients")
}

fn random_branch(rng: &mut ChaCha8Rng) -> Branch {
    if rng.gen_bool(0.5) {
        Branch::Right
    } else {
        Branch::Left
    }
}

fn run_trial(suite: Suite, rng: &mut ChaCha8Rng, inputs: &mut TrialInputs) -> Result<f64> {
    match suite {
        Suite::Residual => residual_trial(rng, inputs),
        Suite::Roundtrip => roundtrip_trial(rng, inputs),
        Suite::Derivative => derivative_trial(rng, inputs),
        Suite::Linearity => linearity_trial(rng, inputs),
        Suite::Witness => witness_trial(rng, inputs),
        Suite::Ode => ode_trial(rng, inputs),
    }
}

/// `|f(x^2 R) - k/(2xR) f(x)| / (1 + |f(x)| + |f(x^2 R)|)`
fn residual_trial(rng: &mut ChaCha8Rng, inputs: &mut TrialInputs) -> Result<f64> {
    let params = random_params(rng, inputs)?;
    let p = random_map(rng, 0);
    let branch = random_branch(rng);
    let s = dyadic(uniform(rng, S_RANGE));
    inputs.p = Some(p.clone());
    inputs.branch = Some(branch);
    inputs.s = Some(s);
    let sol = BranchSolution::new(params, p, branch);
    // both sides of the identity have size |f(x^2 R)|, which dwarfs |f(x)| on the far left
    let scale = 1.0 + sol.eval_at_s(s)?.abs() + sol.eval_at_s(s + 1.0)?.abs();
    Ok(sol.residual_at_s(s)?.abs() / scale)
}

/// `max_s |reconstruct_p(f, s) - p(s)|` over a handful of points.
fn roundtrip_trial(rng: &mut ChaCha8Rng, inputs: &mut TrialInputs) -> Result<f64> {
    let params = random_params(rng, inputs)?;
    let p = random_map(rng, 0);
    let branch = random_branch(rng);
    inputs.p = Some(p.clone());
    inputs.branch = Some(branch);
    let sol = BranchSolution::new(params, p.clone(), branch);
    let f = |x: f64| sol.eval(x).unwrap_or(f64::NAN);
    let mut worst = 0.0f64;
    for _ in 0..ROUNDTRIP_POINTS {
        let s = uniform(rng, S_RANGE);
        let err = (reconstruct_p_on(branch, f, &params, s)? - p.value(s)).abs();
        if !(err <= worst) {
            worst = err;
            inputs.s = Some(s);
        }
    }
    Ok(worst)
}

fn derivative_trial(rng: &mut ChaCha8Rng, inputs: &mut TrialInputs) -> Result<f64> {
    let params = random_params(rng, inputs)?;
    let p = random_map(rng, 0);
    let branch = random_branch(rng);
    let s = uniform(rng, DERIVATIVE_S_RANGE);
    inputs.p = Some(p.clone());
    inputs.branch = Some(branch);
    inputs.s = Some(s);
    let sol = BranchSolution::new(params, p, branch);
    Ok(check_derivative(&sol, s)?.map_or(0.0, |check| check.error))
}

/// Error of `f[alpha p + beta q]` against `alpha f[p] + beta f[q]`, relative to
/// the size of the summands `u^c/(xR) (|alpha| sup|p| + |beta| sup|q|)`.
fn linearity_trial(rng: &mut ChaCha8Rng, inputs: &mut TrialInputs) -> Result<f64> {
    let params = random_params(rng, inputs)?;
    let p = random_map(rng, 0);
    let q = random_map(rng, 0);
    let alpha = rng.gen_range(-2.0..2.0);
    let beta = rng.gen_range(-2.0..2.0);
    let branch = random_branch(rng);
    let s = uniform(rng, S_RANGE);
    inputs.p = Some(p.clone());
    inputs.q = Some(q.clone());
    inputs.alpha = Some(alpha);
    inputs.beta = Some(beta);
    inputs.branch = Some(branch);
    inputs.s = Some(s);

    let x = s_to_x(&params, branch, s)?;
    let combined = BranchSolution::new(params, p.linear_combination(alpha, &q, beta), branch).eval(x)?;
    let fp = BranchSolution::new(params, p.clone(), branch).eval(x)?;
    let fq = BranchSolution::new(params, q.clone(), branch).eval(x)?;
    let envelope = BranchSolution::new(params, PeriodicMap::constant(1.0), branch).eval(x)?.abs();
    let scale = envelope * (alpha.abs() * p.sup_abs_bound() + beta.abs() * q.sup_abs_bound());
    let diff = (combined - (alpha * fp + beta * fq)).abs();
    Ok(if scale > 0.0 { diff / scale } else { diff })
}

/// 0 for a witness that survives re-evaluation, 1 otherwise.
fn witness_trial(rng: &mut ChaCha8Rng, inputs: &mut TrialInputs) -> Result<f64> {
    let r = uniform(rng, R_RANGE);
    inputs.r = Some(r);
    inputs.k = Some(2.0);
    let params = EquationParams::new(r, 2.0)?;
    let p = random_map(rng, 1);
    inputs.p = Some(p.clone());
    let witness = find_nonmonotone_witness(&params, &p)?;
    let sol = BranchSolution::new(params, p, Branch::Right);
    Ok(if witness.verify(&sol)? { 0.0 } else { 1.0 })
}

/// RK4 against the closed-form defect; half the trials start on the constant
/// solution. A disagreement about periodicity scores 1.
fn ode_trial(rng: &mut ChaCha8Rng, inputs: &mut TrialInputs) -> Result<f64> {
    let c = rng.gen_range(0.1..2.0);
    let l = rng.gen_range(-1.0..1.0);
    let p0 = if rng.gen_bool(0.5) { l / c } else { rng.gen_range(-2.0..2.0) };
    inputs.c = Some(c);
    inputs.l = Some(l);
    inputs.p0 = Some(p0);
    let flow = ode_flow(&OdeSpec { c, l, p0, step: ODE_STEP })?;
    let mut err = (flow.periodicity_defect - defect_closed_form(c, l, p0)).abs();
    let numerically_periodic = flow.periodicity_defect.abs() <= ODE_PERIODIC_TOL;
    let constant_start = (p0 - l / c).abs() <= ODE_PERIODIC_TOL;
    if numerically_periodic != constant_start {
        err = err.max(1.0);
    }
    Ok(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!(matches!("bogus".parse::<Suite>(), Err(Error::Usage(_))));
    }

    #[test]
    fn dyadic_shift_is_exact() {
        for &s in &[-9.3, -0.7, 0.3, 7.9999999] {
            let d = dyadic(s);
            assert!((d - s).abs() <= 2f64.powi(-41));
            assert_eq!((d + 1.0) - 1.0, d);
        }
    }

    #[test]
    fn rejects_bad_requests() {
        assert!(matches!(run_suite(Suite::Residual, 0, 1, 1e-10), Err(Error::Usage(_))));
        assert!(matches!(run_suite(Suite::Residual, 5, 1, -1.0), Err(Error::Usage(_))));
        assert!(matches!(run_suite(Suite::Residual, 5, 1, f64::NAN), Err(Error::Usage(_))));
    }

    #[test]
    fn same_seed_same_report() {
        for suite in Suite::ALL {
            let a = run_suite(suite, 20, 11, 1e-8).unwrap();
            let b = run_suite(suite, 20, 11, 1e-8).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn different_seeds_draw_different_inputs() {
        let a = run_suite(Suite::Residual, 10, 1, 1e-10).unwrap();
        let b = run_suite(Suite::Residual, 10, 2, 1e-10).unwrap();
        assert_ne!(a.worst_inputs, b.worst_inputs);
    }

    #[test]
    fn pass_flag_follows_tolerance() {
        let r = run_suite(Suite::Ode, 10, 3, 1e-8).unwrap();
        assert!(r.pass);
        assert!(r.worst_error > 0.0);
        let strict = run_suite(Suite::Ode, 10, 3, r.worst_error / 2.0).unwrap();
        assert!(!strict.pass);
        assert_eq!(strict.worst_error, r.worst_error);
    }
}
