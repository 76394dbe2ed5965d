use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::params::derive_c;

/// The four parameter regimes; a partition of `k > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    /// `k < 2`, `c < 0`
    Subcritical,
    /// `k = 2`, `c = 0`
    Critical,
    /// `2 < k <= 4`, `0 < c <= 1`
    SupercriticalRigid,
    /// `k > 4`, `c > 1`
    SupercriticalFlexible,
}

pub fn classify_regime(k: f64) -> Result<Regime> {
    derive_c(k)?;
    Ok(if k < 2.0 {
        Regime::Subcritical
    } else if k == 2.0 {
        Regime::Critical
    } else if k <= 4.0 {
        Regime::SupercriticalRigid
    } else {
        Regime::SupercriticalFlexible
    })
}

impl Regime {
    /// Whether `phi_c` is monotonic (`c <= 0`).
    pub fn phi_monotone(self) -> bool {
        matches!(self, Regime::Subcritical | Regime::Critical)
    }

    /// Which solutions extend continuously to `x = 1/R`.
    pub fn continuity_rule(self) -> &'static str {
        match self {
            Regime::Subcritical => "only the zero solution extends continuously to 1/R",
            Regime::Critical => "extends continuously iff p is constant; f(1/R) = p",
            Regime::SupercriticalRigid | Regime::SupercriticalFlexible => {
                "every solution extends continuously with f(1/R) = 0"
            }
        }
    }

    /// Which glued solutions are continuously differentiable at `1/R`.
    pub fn c1_rule(self, k: f64) -> &'static str {
        match self {
            Regime::Subcritical | Regime::Critical => "not applicable: no nonzero solution with f(1/R) = 0",
            Regime::SupercriticalRigid if k == 4.0 => {
                "C1 iff p_right = lambda and p_left = -lambda are constants; f'(1/R) = R lambda"
            }
            Regime::SupercriticalRigid => {
                "C1 only for the zero solution; nonzero constant p diverges, non-constant p oscillates"
            }
            Regime::SupercriticalFlexible => "every continuously differentiable periodic p gives C1 with f'(1/R) = 0",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
