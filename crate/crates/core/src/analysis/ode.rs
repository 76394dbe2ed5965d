//! The linear ODE `p' + (c / log2 e) p = L / log2 e` over one period.
//!
//! Its solutions are `p(s) = L/c + (p0 - L/c) 2^(-c s)`, so the defect
//! `p(1) - p(0) = (p0 - L/c)(2^(-c) - 1)` vanishes only for the constant one.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeSpec {
    pub c: f64,
    #[serde(rename = "L")]
    pub l: f64,
    /// `p(0)`
    pub p0: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeFlow {
    pub p_at_1: f64,
    /// `p(1) - p(0)`
    pub periodicity_defect: f64,
}

/// Classical fourth-order Runge-Kutta for a scalar `y' = f(t, y)` with `n` equal steps.
pub fn rk4<F>(f: F, t0: f64, y0: f64, t1: f64, n: usize) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let h = (t1 - t0) / n as f64;
    let mut y = y0;
    for i in 0..n {
        let t = t0 + i as f64 * h;
        let k1 = f(t, y);
        let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
        let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
        let k4 = f(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

/// Integrates from `s = 0` to `s = 1` with at most `spec.step` per step.
pub fn ode_flow(spec: &OdeSpec) -> Result<OdeFlow> {
    if !(spec.step > 0.0) || !spec.step.is_finite() {
        return Err(Error::Domain(format!("integration step must be positive, got {}", spec.step)));
    }
    if spec.c == 0.0 {
        return Err(Error::Domain("c must be nonzero".into()));
    }
    let n = (1.0 / spec.step).ceil().max(1.0) as usize;
    let (c, l) = (spec.c, spec.l);
    // p' = (L - c p) ln 2
    let p_at_1 = rk4(|_, p| (l - c * p) * LN_2, 0.0, spec.p0, 1.0, n);
    Ok(OdeFlow { p_at_1, periodicity_defect: p_at_1 - spec.p0 })
}

/// `(p0 - L/c)(2^(-c) - 1)`.
pub fn defect_closed_form(c: f64, l: f64, p0: f64) -> f64 {
    (p0 - l / c) * ((-c) * LN_2).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flow(c: f64, l: f64, p0: f64) -> OdeFlow {
        ode_flow(&OdeSpec { c, l, p0, step: 1e-3 }).unwrap()
    }

    #[test]
    fn constant_solution_is_periodic() {
        assert!(flow(1.0, 1.0, 1.0).periodicity_defect.abs() < 1e-15);
        assert!(flow(0.37, 0.74, 2.0).periodicity_defect.abs() < 1e-14);
    }

    #[test]
    fn pure_decay_halves() {
        let f = flow(1.0, 0.0, 1.0);
        assert!((f.p_at_1 - 0.5).abs() < 1e-12);
        assert!((f.periodicity_defect + 0.5).abs() < 1e-12);
    }

    #[test]
    fn closed_form_example() {
        let f = flow(0.585, 0.585, 2.0);
        let expected = 2f64.powf(-0.585) - 1.0;
        assert!((defect_closed_form(0.585, 0.585, 2.0) - expected).abs() < 1e-15);
        assert!((f.periodicity_defect - expected).abs() < 1e-8);
        assert!((expected + 0.3333).abs() < 1e-4);
    }

    #[test]
    fn rk4_is_fourth_order() {
        let exact = (-1.0f64).exp();
        let e1 = (rk4(|_, y| -y, 0.0, 1.0, 1.0, 10) - exact).abs();
        let e2 = (rk4(|_, y| -y, 0.0, 1.0, 1.0, 20) - exact).abs();
        let ratio = e1 / e2;
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(ode_flow(&OdeSpec { c: 1.0, l: 0.0, p0: 1.0, step: 0.0 }).is_err());
        assert!(ode_flow(&OdeSpec { c: 1.0, l: 0.0, p0: 1.0, step: -1e-3 }).is_err());
        assert!(ode_flow(&OdeSpec { c: 0.0, l: 0.0, p0: 1.0, step: 1e-3 }).is_err());
    }
}
