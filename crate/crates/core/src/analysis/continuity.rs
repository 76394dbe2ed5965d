//! Continuity at `1/R` and pasting of the two branches.

use serde::Serialize;

use crate::coords::Branch;
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::periodic::PeriodicMap;
use crate::solution::BranchSolution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ContinuityVerdict {
    /// Extends with `f(1/R) = 0`.
    ExtensibleWithZero,
    /// `k = 2`, `p == lambda`: extends with `f(1/R) = lambda`.
    ExtensibleConstant(f64),
    NotExtensible,
}

/// Whether the solution built from `p` extends continuously to `x = 1/R`
/// while still satisfying the equation there.
pub fn classify_continuity(params: &EquationParams, p: &PeriodicMap) -> ContinuityVerdict {
    let k = params.k();
    if k > 2.0 {
        ContinuityVerdict::ExtensibleWithZero
    } else if k == 2.0 {
        match p.constant_value() {
            Some(lambda) => ContinuityVerdict::ExtensibleConstant(lambda),
            // p(s) keeps oscillating as s -> -infinity
            None => ContinuityVerdict::NotExtensible,
        }
    } else if p.is_zero() {
        ContinuityVerdict::ExtensibleWithZero
    } else {
        ContinuityVerdict::NotExtensible
    }
}

/// A continuous solution on `(0, inf)`: left and right branches pasted at `1/R`.
#[derive(Debug, Clone, PartialEq)]
pub struct GluedSolution {
    left: BranchSolution,
    right: BranchSolution,
    boundary_value: f64,
}

pub fn glue(params: &EquationParams, p_left: &PeriodicMap, p_right: &PeriodicMap) -> Result<GluedSolution> {
    let k = params.k();
    let boundary_value = if k > 2.0 {
        0.0
    } else if k == 2.0 {
        match (p_left.constant_value(), p_right.constant_value()) {
            (Some(a), Some(b)) if a == b => a,
            _ => {
                return Err(Error::Precondition("k = 2 gluing needs p_left and p_right to be the same constant".into()))
            }
        }
    } else {
        return Err(Error::Precondition(format!("no continuous gluing for k = {k} < 2")));
    };
    Ok(GluedSolution {
        left: BranchSolution::new(*params, p_left.clone(), Branch::Left),
        right: BranchSolution::new(*params, p_right.clone(), Branch::Right),
        boundary_value,
    })
}

impl GluedSolution {
    pub fn params(&self) -> &EquationParams {
        self.right.params()
    }

    pub fn left(&self) -> &BranchSolution {
        &self.left
    }

    pub fn right(&self) -> &BranchSolution {
        &self.right
    }

    pub fn p_left(&self) -> &PeriodicMap {
        self.left.p()
    }

    pub fn p_right(&self) -> &PeriodicMap {
        self.right.p()
    }

    pub fn boundary_value(&self) -> f64 {
        self.boundary_value
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("glued solution lives on x > 0, got {x}")));
        }
        let w = x * self.params().r() - 1.0;
        if w == 0.0 {
            Ok(self.boundary_value)
        } else if w > 0.0 {
            self.right.eval(x)
        } else {
            self.left.eval(x)
        }
    }

    /// `f(1/R + delta)`.
    pub fn eval_offset(&self, delta: f64) -> Result<f64> {
        if delta == 0.0 {
            Ok(self.boundary_value)
        } else if delta > 0.0 {
            self.right.eval_offset(delta)
        } else {
            self.left.eval_offset(delta)
        }
    }

    /// Residual of the equation at `x` on whichever branch contains it.
    pub fn residual(&self, x: f64) -> Result<f64> {
        let w = x * self.params().r() - 1.0;
        if w == 0.0 {
            // 1/R is fixed by the squaring map: f(1/R) = (k/2) f(1/R)
            Ok(self.boundary_value - self.params().k() / 2.0 * self.boundary_value)
        } else if w > 0.0 {
            self.right.residual(x)
        } else {
            self.left.residual(x)
        }
    }
}
