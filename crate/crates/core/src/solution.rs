//! Closed-form solutions on each side of the fixed point `1/R`.
//!
//! Right branch (`x > 1/R`):  `f(x) = ln(xR)^c / (xR) * p(log2 ln(xR))`.
//! Left branch (`0 < x < 1/R`): `f(x) = (-ln(xR))^c / (xR) * p(log2(-ln(xR)))`.
//!
//! Every evaluator resolves its argument to a [`Coord`] first and then works
//! with `u = |ln(xR)| = 2^s`.

use std::f64::consts::LOG2_E;

use crate::coords::{finite, Branch, Coord};
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::periodic::PeriodicMap;

/// `u^c / (xR)`, shared by every evaluator so that `p == 1` reproduces `phi_c` exactly.
fn envelope(c: f64, u: f64, xr: f64) -> f64 {
    u.powf(c) / xr
}

/// The special solution `phi_c(x) = ln(xR)^c / (xR)` on `x > 1/R`.
pub fn eval_phi(params: &EquationParams, x: f64) -> Result<f64> {
    let coord = Coord::from_x(params, Branch::Right, x)?;
    finite(envelope(params.c(), coord.u, coord.xr), "phi_c(x)")
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchSolution {
    params: EquationParams,
    p: PeriodicMap,
    branch: Branch,
}

impl BranchSolution {
    pub fn new(params: EquationParams, p: PeriodicMap, branch: Branch) -> Self {
        Self { params, p, branch }
    }

    /// `phi_c` as a right-branch solution with `p == 1`.
    pub fn phi(params: EquationParams) -> Self {
        Self::new(params, PeriodicMap::constant(1.0), Branch::Right)
    }

    pub fn params(&self) -> &EquationParams {
        &self.params
    }

    pub fn p(&self) -> &PeriodicMap {
        &self.p
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    fn at_x(&self, x: f64) -> Result<Coord> {
        Coord::from_x(&self.params, self.branch, x)
    }

    fn at_offset(&self, delta: f64) -> Result<Coord> {
        Coord::from_offset(&self.params, self.branch, delta)
    }

    fn at_s(&self, s: f64) -> Result<Coord> {
        Coord::from_s(self.branch, s)
    }

    fn value(&self, at: &Coord) -> Result<f64> {
        finite(envelope(self.params.c(), at.u, at.xr) * self.p.value(at.s), "f(x)")
    }

    fn slope(&self, at: &Coord) -> Result<f64> {
        let c = self.params.c();
        let (p, dp) = (self.p.value(at.s), self.p.derivative(at.s));
        // d/dx of u is +1/x on the right and -1/x on the left; the mirror
        // bracket therefore carries c + u and an overall minus sign.
        let bracket = match self.branch {
            Branch::Right => (c - at.u) * p + LOG2_E * dp,
            Branch::Left => -((c + at.u) * p + LOG2_E * dp),
        };
        // u^(c-1) / (x^2 R) = u^(c-1) R / (xR)^2
        let scale = at.u.powf(c - 1.0) * self.params.r() / at.xr / at.xr;
        finite(scale * bracket, "f'(x)")
    }

    fn residual_between(&self, at: &Coord, image: &Coord) -> Result<f64> {
        let lhs = self.value(image)?;
        let rhs = self.params.k() / (2.0 * at.xr) * self.value(at)?;
        finite(lhs - rhs, "residual")
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.value(&self.at_x(x)?)
    }

    /// `f(1/R + delta)`; accurate for tiny `|delta|`.
    pub fn eval_offset(&self, delta: f64) -> Result<f64> {
        self.value(&self.at_offset(delta)?)
    }

    /// `f` at the point whose conjugacy coordinate is `s`.
    pub fn eval_at_s(&self, s: f64) -> Result<f64> {
        self.value(&self.at_s(s)?)
    }

    pub fn eval_prime(&self, x: f64) -> Result<f64> {
        self.slope(&self.at_x(x)?)
    }

    pub fn eval_prime_offset(&self, delta: f64) -> Result<f64> {
        self.slope(&self.at_offset(delta)?)
    }

    pub fn eval_prime_at_s(&self, s: f64) -> Result<f64> {
        self.slope(&self.at_s(s)?)
    }

    /// `f(x^2 R) - k/(2xR) f(x)`.
    pub fn residual(&self, x: f64) -> Result<f64> {
        let at = self.at_x(x)?;
        self.residual_between(&at, &at.image()?)
    }

    pub fn residual_offset(&self, delta: f64) -> Result<f64> {
        let at = self.at_offset(delta)?;
        self.residual_between(&at, &at.image()?)
    }

    /// Residual with the image taken as coordinate `s + 1`. When `s + 1` is
    /// exact (dyadic `s`) both sides see the same phase of `p`.
    pub fn residual_at_s(&self, s: f64) -> Result<f64> {
        let at = self.at_s(s)?;
        let image = self.at_s(s + 1.0)?;
        self.residual_between(&at, &image)
    }
}

/// Recovers the modulation from an arbitrary right-branch solution:
/// `p(s) = (2/k)^s exp(2^s) f(exp(2^s)/R)`.
pub fn reconstruct_p<F>(f: F, params: &EquationParams, s: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    reconstruct_p_on(Branch::Right, f, params, s)
}

/// Branch-aware form of [`reconstruct_p`]; on the left `p(s) = (2/k)^s exp(-2^s) f(exp(-2^s)/R)`.
pub fn reconstruct_p_on<F>(branch: Branch, f: F, params: &EquationParams, s: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let coord = Coord::from_s(branch, s)?;
    let x = finite(coord.xr / params.r(), "x(s)")?;
    let fx = f(x);
    if !fx.is_finite() {
        return Err(Error::Domain(format!("f is not finite at x = {x}")));
    }
    finite((2.0 / params.k()).powf(s) * coord.xr * fx, "reconstructed p(s)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::{s_to_offset, s_to_x};
    use std::f64::consts::E;

    fn params(r: f64, k: f64) -> EquationParams {
        EquationParams::new(r, k).unwrap()
    }

    fn cos_map(a0: f64, a1: f64) -> PeriodicMap {
        PeriodicMap::new(a0, vec![(a1, 0.0)]).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn phi_examples() {
        assert!(rel(eval_phi(&params(1.0, 2.0), E).unwrap(), 1.0 / E) < 1e-15);
        assert!(rel(eval_phi(&params(2.0, 8.0), E / 2.0).unwrap(), 1.0 / E) < 1e-15);
        assert!(rel(eval_phi(&params(1.0, 4.0), E * E).unwrap(), 0.2706705664732254) < 1e-15);
    }

    #[test]
    fn phi_rejects_boundary_and_left() {
        let p = params(1.0, 0.5);
        assert!(matches!(eval_phi(&p, 1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_phi(&p, 0.3), Err(Error::Domain(_))));
        assert!(matches!(eval_phi(&params(1.0, 4.0), 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn eval_examples() {
        let sol = BranchSolution::phi(params(1.0, 2.0));
        assert!(rel(sol.eval(E).unwrap(), 1.0 / E) < 1e-15);

        let sol = BranchSolution::new(params(1.0, 2.0), cos_map(1.0, 0.5), Branch::Right);
        assert!(rel(sol.eval(E).unwrap(), 0.5518191617571635) < 1e-14);

        let left = BranchSolution::new(params(1.0, 2.0), PeriodicMap::constant(1.0), Branch::Left);
        assert!(rel(left.eval(1.0 / E).unwrap(), E) < 1e-15);
    }

    #[test]
    fn eval_rejects_wrong_side() {
        let sol = BranchSolution::phi(params(1.0, 3.0));
        assert!(matches!(sol.eval(1.0), Err(Error::Domain(_))));
        assert!(matches!(sol.eval(0.5), Err(Error::Domain(_))));
        assert!(matches!(sol.eval_at_s(9.3), Err(Error::Overflow(_))));
    }

    #[test]
    fn derivative_examples() {
        let sol = BranchSolution::phi(params(1.0, 2.0));
        assert!(rel(sol.eval_prime(E).unwrap(), -1.0 / (E * E)) < 1e-15);

        // c = 1: f' -> R as x -> 1/R+
        let sol = BranchSolution::phi(params(1.0, 4.0));
        let d = sol.eval_prime_offset(1e-14).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        let sol = BranchSolution::phi(params(3.0, 4.0));
        assert!((sol.eval_prime_offset(1e-15).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_at_two_matches_central_difference() {
        let sol = BranchSolution::new(params(1.0, 2.0), cos_map(1.0, 0.5), Branch::Right);
        let h = 2.0 * 1e-5;
        let fd = (sol.eval(2.0 + h).unwrap() - sol.eval(2.0 - h).unwrap()) / (2.0 * h);
        assert!(rel(sol.eval_prime(2.0).unwrap(), fd) < 1e-5);
    }

    #[test]
    fn left_mirror_derivative_matches_central_difference() {
        let p = PeriodicMap::new(0.7, vec![(0.2, -0.3), (0.1, 0.05)]).unwrap();
        for &k in &[0.7, 2.0, 3.0, 4.0, 6.5] {
            let sol = BranchSolution::new(params(1.3, k), p.clone(), Branch::Left);
            for &s in &[-3.0, -1.2, 0.0, 0.8, 2.5] {
                let d = s_to_offset(sol.params(), Branch::Left, s).unwrap();
                let h = d.abs() * 1e-6;
                let fd = (sol.eval_offset(d + h).unwrap() - sol.eval_offset(d - h).unwrap()) / (2.0 * h);
                let an = sol.eval_prime_offset(d).unwrap();
                assert!(rel(an, fd) < 1e-6, "k {k} s {s}: {an} vs {fd}");
            }
        }
    }

    #[test]
    fn residual_examples() {
        let sol = BranchSolution::phi(params(1.0, 2.0));
        assert!(sol.residual(2.0).unwrap().abs() < 1e-16);

        let p = PeriodicMap::new(1.0, vec![(0.0, 0.3)]).unwrap();
        let sol = BranchSolution::new(params(1.0, 3.0), p, Branch::Right);
        let r = sol.residual(1.7).unwrap();
        assert!(r.abs() <= 1e-10 * (1.0 + sol.eval(1.7).unwrap().abs()));
    }

    #[test]
    fn residual_left_branch_stays_left() {
        let p = PeriodicMap::new(1.0, vec![(0.3, 0.1)]).unwrap();
        let sol = BranchSolution::new(params(2.0, 3.0), p, Branch::Left);
        for &x in &[0.05, 0.2, 0.4, 0.49] {
            let r = sol.residual(x).unwrap();
            assert!(r.abs() <= 1e-10 * (1.0 + sol.eval(x).unwrap().abs()), "x {x}: {r}");
        }
    }

    #[test]
    fn residual_image_outside_window() {
        let sol = BranchSolution::phi(params(1.0, 3.0));
        assert!(matches!(sol.residual_at_s(8.5), Err(Error::Overflow(_))));
    }

    #[test]
    fn reconstruct_examples() {
        for &(r, k) in &[(1.0, 2.0), (0.3, 0.7), (5.0, 7.0)] {
            let pr = params(r, k);
            let phi = |x: f64| eval_phi(&pr, x).unwrap_or(f64::NAN);
            for &s in &[-3.0, -0.5, 0.0, 1.7, 6.0] {
                assert!((reconstruct_p(phi, &pr, s).unwrap() - 1.0).abs() < 1e-10);
            }
        }
        let pr = params(1.0, 2.0);
        let sol = BranchSolution::new(pr, cos_map(1.0, 0.5), Branch::Right);
        let f = |x: f64| sol.eval(x).unwrap_or(f64::NAN);
        assert!((reconstruct_p(f, &pr, 0.25).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reconstruct_degree_three_at_negative_s() {
        let q = PeriodicMap::new(0.4, vec![(0.3, -0.7), (-0.2, 0.5), (0.9, 0.1)]).unwrap();
        let pr = params(2.5, 5.5);
        let sol = BranchSolution::new(pr, q.clone(), Branch::Right);
        let f = |x: f64| sol.eval(x).unwrap_or(f64::NAN);
        assert!((reconstruct_p(f, &pr, -3.7).unwrap() - q.value(-3.7)).abs() < 1e-9);
    }

    #[test]
    fn reconstruct_left_branch() {
        let q = PeriodicMap::new(0.4, vec![(0.3, -0.7)]).unwrap();
        let pr = params(0.8, 1.3);
        let sol = BranchSolution::new(pr, q.clone(), Branch::Left);
        let f = |x: f64| sol.eval(x).unwrap_or(f64::NAN);
        for &s in &[-4.0, 0.3, 5.0] {
            let got = reconstruct_p_on(Branch::Left, f, &pr, s).unwrap();
            assert!((got - q.value(s)).abs() < 1e-9);
        }
    }

    #[test]
    fn reconstruct_errors() {
        let pr = params(1.0, 3.0);
        assert!(matches!(reconstruct_p(|_| 1.0, &pr, 9.6), Err(Error::Overflow(_))));
        assert!(reconstruct_p(|_| f64::NAN, &pr, 0.0).is_err());
    }

    #[test]
    fn phi_special_case_is_same_path() {
        let pr = params(1.7, 0.9);
        let sol = BranchSolution::phi(pr);
        for &s in &[-10.0, -2.0, 0.3, 4.0, 8.0] {
            let x = s_to_x(&pr, Branch::Right, s).unwrap();
            assert_eq!(sol.eval(x).unwrap(), eval_phi(&pr, x).unwrap());
        }
    }
}
