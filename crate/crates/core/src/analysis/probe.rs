//! Numerical evidence for the boundary limits: values and secant slopes of a
//! glued solution on a ladder of distances from `1/R`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::continuity::GluedSolution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::Usage(format!("unknown side {other:?} (expected left|right)"))),
        }
    }
}

/// One rung of the ladder. Evaluation failures are recorded in `error`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub delta: f64,
    pub f: Option<f64>,
    /// `(f(1/R +- delta) - f(1/R)) / (+- delta)`
    pub fd_slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// `{1e-3, 1e-4, ..., 1e-12}`
pub fn default_ladder() -> Vec<f64> {
    (3..=12).map(|e| 10f64.powi(-e)).collect()
}

pub fn boundary_probe(glued: &GluedSolution, side: Side, ladder: &[f64]) -> Result<Vec<ProbeRow>> {
    if ladder.iter().any(|d| !(*d > 0.0) || !d.is_finite()) {
        return Err(Error::Domain("ladder entries must be positive and finite".into()));
    }
    if ladder.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Domain("ladder must be strictly decreasing".into()));
    }
    let sign = side.sign();
    let base = glued.boundary_value();
    Ok(ladder
        .iter()
        .map(|&delta| match glued.eval_offset(sign * delta) {
            Ok(f) => ProbeRow { delta, f: Some(f), fd_slope: Some((f - base) / (sign * delta)), error: None },
            Err(e) => ProbeRow { delta, f: None, fd_slope: None, error: Some(e.to_string()) },
        })
        .collect())
}
