//! Monotonicity on the right branch `x > 1/R`.
//!
//! For `k < 2` a sufficient condition certifies a constant sign of `f'`:
//! with `u = ln(xR) > 0` and `c < 0` the derivative bracket satisfies
//! `(c - u) p + log2(e) p' <= c inf p + log2(e) sup|p'|`, which is negative
//! once `sup|p'| < ln 2 |c| inf p`.
//!
//! For `k = 2` every non-constant `p` breaks monotonicity. The witness search
//! follows the phases where `p` attains a high value `M` and a low value `m`
//! towards `1/R`, until `M/(x_high R) > m/(x_low R)` with `x_low < x_high`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::analysis::roots::bisect;
use crate::coords::{s_to_x, Branch, S_MIN};
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::periodic::PeriodicMap;
use crate::solution::BranchSolution;

pub const PHASE_GRID: usize = 1024;
pub const PHASE_REFINEMENTS: usize = 40;

/// A pair `x_low < x_high` with `f(x_low) < f(x_high)`: `f` is not decreasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub x_low: f64,
    pub x_high: f64,
    pub f_low: f64,
    pub f_high: f64,
    /// phase in `[0, 1)` of `s` at `x_low`
    pub phase_low: f64,
    /// phase in `[0, 1)` of `s` at `x_high`
    pub phase_high: f64,
    /// `m = p(phase_low)`
    pub p_low: f64,
    /// `M = p(phase_high)`
    pub p_high: f64,
}

impl Witness {
    /// Re-evaluates both points with `sol.eval`.
    pub fn verify(&self, sol: &BranchSolution) -> Result<bool> {
        let f_low = sol.eval(self.x_low)?;
        let f_high = sol.eval(self.x_high)?;
        Ok(self.x_low < self.x_high && f_high > f_low)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum MonotonicityVerdict {
    MonotoneDecreasingCertified,
    MonotoneIncreasingCertified,
    /// `rises` refutes "decreasing"; `falls` is a witness for `-f`, refuting "increasing".
    NotMonotone {
        rises: Witness,
        falls: Witness,
    },
    Inconclusive,
}

/// Sufficient condition for a monotone right-branch solution when `k < 2`.
pub fn monotone_sufficient(params: &EquationParams, p: &PeriodicMap) -> Result<MonotonicityVerdict> {
    if !(params.k() < 2.0) {
        return Err(Error::Precondition(format!("the sufficient bound needs k < 2, got k = {}", params.k())));
    }
    let margin = LN_2 * params.c().abs();
    let deriv = p.upper_deriv_bound();
    let lower = p.lower_bound();
    let upper = p.upper_bound();
    Ok(if lower > 0.0 && deriv < margin * lower {
        MonotonicityVerdict::MonotoneDecreasingCertified
    } else if upper < 0.0 && deriv < margin * upper.abs() {
        MonotonicityVerdict::MonotoneIncreasingCertified
    } else {
        MonotonicityVerdict::Inconclusive
    })
}

/// Phase in `[0, 1)` where `p` is largest (`sign = 1`) or smallest (`sign = -1`).
fn extremal_phase(p: &PeriodicMap, sign: f64) -> f64 {
    let g = |t: f64| sign * p.value(t);
    let grid = |i: usize| i as f64 / PHASE_GRID as f64;
    let best = (0..PHASE_GRID).max_by(|&a, &b| g(grid(a)).total_cmp(&g(grid(b)))).unwrap_or(0);
    let t0 = grid(best);
    let h = 1.0 / PHASE_GRID as f64;
    let dg = |t: f64| sign * p.derivative(t);
    let (lo, hi) = (t0 - h, t0 + h);
    let t = if dg(lo) > 0.0 && dg(hi) < 0.0 {
        let refined = bisect(dg, lo, hi, PHASE_REFINEMENTS);
        if g(refined) >= g(t0) {
            refined
        } else {
            t0
        }
    } else {
        t0
    };
    t.rem_euclid(1.0)
}

/// Constructive non-monotonicity for `k = 2` and non-constant `p`.
pub fn find_nonmonotone_witness(params: &EquationParams, p: &PeriodicMap) -> Result<Witness> {
    if params.k() != 2.0 {
        return Err(Error::Precondition(format!("witness search needs k = 2, got k = {}", params.k())));
    }
    if p.is_constant() {
        return Err(Error::Precondition("witness search needs a non-constant p".into()));
    }
    let phase_high = extremal_phase(p, 1.0);
    let phase_low = extremal_phase(p, -1.0);
    let (p_high, p_low) = (p.value(phase_high), p.value(phase_low));
    if !(p_high > p_low) {
        return Err(Error::Precondition("p is numerically constant".into()));
    }
    // the low phase must sit just below the high one in s
    let start_low = if phase_low < phase_high { phase_low } else { phase_low - 1.0 };

    let sol = BranchSolution::new(*params, p.clone(), Branch::Right);
    let mut shift = 0.0;
    while start_low - shift >= S_MIN {
        let x_high = s_to_x(params, Branch::Right, phase_high - shift)?;
        let x_low = s_to_x(params, Branch::Right, start_low - shift)?;
        if !(x_low < x_high) {
            break;
        }
        let (f_low, f_high) = (sol.eval(x_low)?, sol.eval(x_high)?);
        if f_high > f_low {
            return Ok(Witness { x_low, x_high, f_low, f_high, phase_low, phase_high, p_low, p_high });
        }
        shift += 1.0;
    }
    Err(Error::Internal(format!("no witness before x lost resolution near 1/R (M = {p_high}, m = {p_low})")))
}

/// Monotonicity verdict on the right branch for any `k`.
///
/// `k < 2` uses the sufficient bound; `k = 2` is decided exactly (constant `p`
/// is monotone, anything else has witnesses in both directions); `k > 2` is
/// left `Inconclusive`.
pub fn classify_monotonicity(params: &EquationParams, p: &PeriodicMap) -> Result<MonotonicityVerdict> {
    let k = params.k();
    if k < 2.0 {
        return monotone_sufficient(params, p);
    }
    if k > 2.0 {
        return Ok(MonotonicityVerdict::Inconclusive);
    }
    Ok(match p.constant_value() {
        Some(v) if v < 0.0 => MonotonicityVerdict::MonotoneIncreasingCertified,
        Some(_) => MonotonicityVerdict::MonotoneDecreasingCertified,
        None => MonotonicityVerdict::NotMonotone {
            rises: find_nonmonotone_witness(params, p)?,
            falls: find_nonmonotone_witness(params, &-p)?,
        },
    })
}
