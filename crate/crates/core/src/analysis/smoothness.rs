//! Continuous differentiability of glued solutions at `1/R` (`k > 2`).
//!
//! Near `1/R` the right-branch derivative is `u^(c-1) R (1 + O(u)) * B(s)`
//! with bracket `B = (c - u) p + log2(e) p'`. For `c > 1` the prefactor kills
//! any bounded bracket. For `c <= 1` a limit needs `c p + log2(e) p'` to
//! settle, which forces `p` to solve `p' + (c/log2 e) p = L/log2 e`; its only
//! periodic solutions are constants. A nonzero constant then diverges like
//! `u^(c-1)` when `c < 1`, and at `c = 1` the one-sided limits are `R lambda`
//! on the right and `-R mu` on the left.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::periodic::PeriodicMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NotC1Reason {
    DivergentDerivative,
    OscillatingDerivative,
    LeftRightMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Smoothness {
    C1WithDerivative(f64),
    NotC1(NotC1Reason),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothnessVerdict {
    pub smoothness: Smoothness,
    /// `L`: limit of the right-branch bracket as `x -> 1/R+`, when it exists.
    pub bracket_limit: Option<f64>,
}

impl SmoothnessVerdict {
    pub fn is_c1(&self) -> bool {
        matches!(self.smoothness, Smoothness::C1WithDerivative(_))
    }
}

pub fn classify_smoothness(
    params: &EquationParams,
    p_right: &PeriodicMap,
    p_left: &PeriodicMap,
) -> Result<SmoothnessVerdict> {
    let k = params.k();
    if !(k > 2.0) {
        return Err(Error::Precondition(format!("C1 classification needs k > 2, got k = {k}")));
    }
    let c = params.c();
    let bracket_limit = p_right.constant_value().map(|lambda| c * lambda);
    let verdict = |smoothness| Ok(SmoothnessVerdict { smoothness, bracket_limit });

    if k > 4.0 {
        return verdict(Smoothness::C1WithDerivative(0.0));
    }
    let (lambda, mu) = match (p_right.constant_value(), p_left.constant_value()) {
        (Some(lambda), Some(mu)) => (lambda, mu),
        _ => return verdict(Smoothness::NotC1(NotC1Reason::OscillatingDerivative)),
    };
    if k == 4.0 {
        if mu == -lambda {
            verdict(Smoothness::C1WithDerivative(params.r() * lambda))
        } else {
            verdict(Smoothness::NotC1(NotC1Reason::LeftRightMismatch))
        }
    } else if lambda == 0.0 && mu == 0.0 {
        verdict(Smoothness::C1WithDerivative(0.0))
    } else {
        verdict(Smoothness::NotC1(NotC1Reason::DivergentDerivative))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: f64, k: f64) -> EquationParams {
        EquationParams::new(r, k).unwrap()
    }

    fn konst(v: f64) -> PeriodicMap {
        PeriodicMap::constant(v)
    }

    fn wavy() -> PeriodicMap {
        PeriodicMap::new(1.0, vec![(0.2, 0.0)]).unwrap()
    }

    #[test]
    fn flexible_regime_is_always_c1() {
        let a = PeriodicMap::new(0.3, vec![(0.5, -0.2), (0.1, 0.7)]).unwrap();
        let v = classify_smoothness(&params(1.0, 5.0), &a, &wavy()).unwrap();
        assert_eq!(v.smoothness, Smoothness::C1WithDerivative(0.0));
        assert_eq!(v.bracket_limit, None);
        let v = classify_smoothness(&params(1.0, 5.0), &konst(2.0), &konst(7.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::C1WithDerivative(0.0));
        assert!((v.bracket_limit.unwrap() - 2.0 * 2.5f64.log2()).abs() < 1e-15);
    }

    #[test]
    fn k4_needs_opposite_constants() {
        let v = classify_smoothness(&params(1.0, 4.0), &konst(1.0), &konst(-1.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::C1WithDerivative(1.0));
        assert_eq!(v.bracket_limit, Some(1.0));
        let v = classify_smoothness(&params(2.5, 4.0), &konst(2.0), &konst(-2.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::C1WithDerivative(5.0));
        let v = classify_smoothness(&params(1.0, 4.0), &konst(1.0), &konst(1.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::NotC1(NotC1Reason::LeftRightMismatch));
        let v = classify_smoothness(&params(1.0, 4.0), &wavy(), &konst(-1.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::NotC1(NotC1Reason::OscillatingDerivative));
        let v = classify_smoothness(&params(1.0, 4.0), &konst(0.0), &konst(0.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::C1WithDerivative(0.0));
    }

    #[test]
    fn rigid_regime_below_one() {
        let pr = params(1.0, 3.0);
        let v = classify_smoothness(&pr, &wavy(), &konst(1.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::NotC1(NotC1Reason::OscillatingDerivative));
        assert_eq!(v.bracket_limit, None);
        let v = classify_smoothness(&pr, &konst(1.0), &wavy()).unwrap();
        assert_eq!(v.smoothness, Smoothness::NotC1(NotC1Reason::OscillatingDerivative));
        let v = classify_smoothness(&pr, &konst(1.0), &konst(1.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::NotC1(NotC1Reason::DivergentDerivative));
        let v = classify_smoothness(&pr, &konst(0.0), &konst(-3.0)).unwrap();
        assert_eq!(v.smoothness, Smoothness::NotC1(NotC1Reason::DivergentDerivative));
        let v = classify_smoothness(&pr, &konst(0.0), &konst(0.0)).unwrap();
        assert!(v.is_c1());
    }

    #[test]
    fn requires_supercritical() {
        for k in [1.0, 2.0] {
            assert!(matches!(
                classify_smoothness(&params(1.0, k), &konst(1.0), &konst(1.0)),
                Err(Error::Precondition(_))
            ));
        }
    }
}
