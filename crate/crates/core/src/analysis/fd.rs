//! Central-difference check of the closed-form derivative.
//!
//! The numeric side only ever calls `eval`/`eval_offset`, never the
//! derivative evaluator it checks.

use std::f64::consts::{LN_2, LOG2_E};

use serde::Serialize;

use crate::coords::{s_to_offset, s_to_x};
use crate::error::{Error, Result};
use crate::solution::BranchSolution;

/// Step as a fraction of the local oscillation length.
pub const REL_STEP: f64 = 1e-4;

/// Points closer than this many multiples of `1/R` to the boundary are skipped.
pub const BOUNDARY_EXCLUSION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub x: f64,
    pub analytic: f64,
    pub numeric: f64,
    pub step: f64,
    /// `|numeric - analytic| / max(|analytic|, term scale)`
    pub error: f64,
}

pub fn central_difference<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(h > 0.0) {
        return Err(Error::Domain(format!("finite-difference step must be positive, got {h}")));
    }
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

/// Compares `eval_prime_at_s(s)` with a central difference of `eval`.
/// Returns `None` inside the boundary exclusion zone.
pub fn check_derivative(sol: &BranchSolution, s: f64) -> Result<Option<DerivativeCheck>> {
    let params = sol.params();
    let branch = sol.branch();
    let r = params.r();
    let x = s_to_x(params, branch, s)?;
    let delta = s_to_offset(params, branch, s)?;
    if delta.abs() < BOUNDARY_EXCLUSION / r {
        return Ok(None);
    }

    let u = s.exp2();
    let harmonics = sol.p().degree().max(1) as f64;
    // dx/ds = x u ln2; the j-th harmonic has period 1/j in s
    let length = x * (u * LN_2 / harmonics).min(1.0);
    let step = REL_STEP * length;

    let numeric = if (delta * r).abs() < 0.5 {
        central_difference(|d| sol.eval_offset(d), delta, step)?
    } else {
        central_difference(|t| sol.eval(t), x, step)?
    };
    let analytic = sol.eval_prime_at_s(s)?;

    let c = params.c();
    let xr = x * r;
    let terms = u.powf(c - 1.0) * r / xr / xr
        * ((c.abs() + u) * sol.p().sup_abs_bound() + LOG2_E * sol.p().upper_deriv_bound());
    let denom = analytic.abs().max(terms);
    let error = if denom > 0.0 { (numeric - analytic).abs() / denom } else { (numeric - analytic).abs() };
    Ok(Some(DerivativeCheck { x, analytic, numeric, step, error }))
}
