//! The conjugacy coordinate `s = log2(|ln(xR)|)`.
//!
//! In `s` the squaring map `x -> x^2 R` becomes the unit shift `s -> s + 1`
//! on both sides of the fixed point `1/R`. Points can be supplied as an
//! absolute `x`, as a deviation `delta = x - 1/R`, or directly as `s`; the
//! deviation form keeps full relative precision of `ln(xR)` arbitrarily
//! close to the boundary.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::EquationParams;

/// Lowest representable conjugacy coordinate.
pub const S_MIN: f64 = -60.0;
/// Highest representable conjugacy coordinate (`exp(2^s)` overflows near 9.47).
pub const S_MAX: f64 = 9.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `x > 1/R`
    Right,
    /// `0 < x < 1/R`
    Left,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Right => 1.0,
            Branch::Left => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Right => "right",
            Branch::Left => "left",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Branch::Right),
            "left" => Ok(Branch::Left),
            other => Err(Error::Usage(format!("unknown branch {other:?} (expected right|left)"))),
        }
    }
}

/// A point of one branch resolved into every coordinate the evaluators need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Coord {
    pub branch: Branch,
    /// `|ln(xR)| > 0`
    pub u: f64,
    /// `log2(u)`
    pub s: f64,
    /// `xR`
    pub xr: f64,
    /// `xR - 1`
    pub w: f64,
}

impl Coord {
    /// From `w = xR - 1` and `xr`; both are kept because each is the accurate
    /// one on a different part of the branch.
    fn from_parts(branch: Branch, w: f64, xr: f64) -> Result<Self> {
        if w.is_nan() {
            return Err(Error::Domain("point is not a number".into()));
        }
        match branch {
            Branch::Right if w <= 0.0 => {
                return Err(Error::Domain(format!("right branch needs x > 1/R (xR - 1 = {w:e})")))
            }
            Branch::Left if !(w < 0.0 && xr > 0.0) => {
                return Err(Error::Domain(format!("left branch needs 0 < x < 1/R (xR - 1 = {w:e})")))
            }
            _ => {}
        }
        // log1p near the boundary, plain ln once xR is far from 1
        let u = if w.abs() < 0.5 { w.ln_1p() } else { xr.ln() }.abs();
        let s = u.log2();
        check_window(s)?;
        Ok(Self { branch, u, s, xr, w })
    }

    pub fn from_x(params: &EquationParams, branch: Branch, x: f64) -> Result<Self> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("x must be positive, got {x}")));
        }
        let xr = x * params.r();
        Self::from_parts(branch, xr - 1.0, xr)
    }

    /// From the scaled deviation `w = (x - 1/R) R`.
    pub fn from_scaled_offset(branch: Branch, w: f64) -> Result<Self> {
        Self::from_parts(branch, w, 1.0 + w)
    }

    pub fn from_offset(params: &EquationParams, branch: Branch, delta: f64) -> Result<Self> {
        Self::from_scaled_offset(branch, delta * params.r())
    }

    pub fn from_s(branch: Branch, s: f64) -> Result<Self> {
        check_window(s)?;
        let u = s.exp2();
        let (xr, w) = match branch {
            Branch::Right => (u.exp(), u.exp_m1()),
            Branch::Left => ((-u).exp(), (-u).exp_m1()),
        };
        if !xr.is_finite() || xr == 0.0 {
            return Err(Error::Overflow(format!("exp(2^s) not representable at s = {s}")));
        }
        Ok(Self { branch, u, s, xr, w })
    }

    /// The image under `x -> x^2 R`, computed through `w' = w (2 + w)` to avoid cancellation.
    pub fn image(&self) -> Result<Self> {
        let w = self.w * (2.0 + self.w);
        if !w.is_finite() {
            return Err(Error::Overflow("image point x^2 R overflows".into()));
        }
        Self::from_parts(self.branch, w, self.xr * self.xr)
    }
}

fn check_window(s: f64) -> Result<()> {
    if s.is_nan() {
        return Err(Error::Domain("conjugacy coordinate is not a number".into()));
    }
    if !(S_MIN..=S_MAX).contains(&s) {
        return Err(Error::Overflow(format!("conjugacy coordinate s = {s} outside the window [{S_MIN}, {S_MAX}]")));
    }
    Ok(())
}

pub fn x_to_s(params: &EquationParams, branch: Branch, x: f64) -> Result<f64> {
    Coord::from_x(params, branch, x).map(|c| c.s)
}

/// `s` for the point `x = 1/R + delta`.
pub fn offset_to_s(params: &EquationParams, branch: Branch, delta: f64) -> Result<f64> {
    Coord::from_offset(params, branch, delta).map(|c| c.s)
}

/// `exp(2^s)/R` on the right branch, `exp(-2^s)/R` on the left.
pub fn s_to_x(params: &EquationParams, branch: Branch, s: f64) -> Result<f64> {
    let coord = Coord::from_s(branch, s)?;
    finite(coord.xr / params.r(), "x")
}

/// `x - 1/R` for the point with coordinate `s`, without cancellation.
pub fn s_to_offset(params: &EquationParams, branch: Branch, s: f64) -> Result<f64> {
    let coord = Coord::from_s(branch, s)?;
    finite(coord.w / params.r(), "x - 1/R")
}

pub(crate) fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{what} is not representable in binary64")))
    }
}
