//! Period-1 modulation functions as finite trigonometric series.
//!
//! `p(s) = a0 + sum_j (a_j cos(2 pi j s) + b_j sin(2 pi j s))`, `j = 1..=d`.
//! The phase is reduced to `[0, 1)` before evaluation, so `p(s + 1)` and
//! `p(s)` agree bit for bit whenever `s + 1` is itself exact.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicMap {
    a0: f64,
    harmonics: Vec<(f64, f64)>,
}

impl PeriodicMap {
    /// `harmonics[j - 1] = (a_j, b_j)`.
    pub fn new(a0: f64, harmonics: Vec<(f64, f64)>) -> Result<Self> {
        let finite = a0.is_finite() && harmonics.iter().all(|(a, b)| a.is_finite() && b.is_finite());
        if !finite {
            return Err(Error::Domain("Fourier coefficients must be finite".into()));
        }
        Ok(Self { a0, harmonics })
    }

    pub fn constant(value: f64) -> Self {
        Self { a0: value, harmonics: Vec::new() }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn harmonics(&self) -> &[(f64, f64)] {
        &self.harmonics
    }

    pub fn degree(&self) -> usize {
        self.harmonics.len()
    }

    /// True when every harmonic coefficient is exactly zero.
    pub fn is_constant(&self) -> bool {
        self.harmonics.iter().all(|&(a, b)| a == 0.0 && b == 0.0)
    }

    pub fn constant_value(&self) -> Option<f64> {
        self.is_constant().then_some(self.a0)
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0.0 && self.is_constant()
    }

    pub fn value(&self, s: f64) -> f64 {
        let t = phase(s);
        self.harmonics.iter().enumerate().fold(self.a0, |acc, (i, &(a, b))| {
            let (sin, cos) = (TAU * (i + 1) as f64 * t).sin_cos();
            acc + a * cos + b * sin
        })
    }

    pub fn derivative(&self, s: f64) -> f64 {
        let t = phase(s);
        self.harmonics.iter().enumerate().fold(0.0, |acc, (i, &(a, b))| {
            let w = TAU * (i + 1) as f64;
            let (sin, cos) = (w * t).sin_cos();
            acc + w * (b * cos - a * sin)
        })
    }

    fn amplitude_sum(&self) -> f64 {
        self.harmonics.iter().map(|&(a, b)| a.hypot(b)).sum()
    }

    /// Rigorous lower bound `a0 - sum_j |(a_j, b_j)|` on `p`.
    pub fn lower_bound(&self) -> f64 {
        self.a0 - self.amplitude_sum()
    }

    /// Rigorous upper bound `a0 + sum_j |(a_j, b_j)|` on `p`.
    pub fn upper_bound(&self) -> f64 {
        self.a0 + self.amplitude_sum()
    }

    /// Bound on `sup |p|`.
    pub fn sup_abs_bound(&self) -> f64 {
        self.a0.abs() + self.amplitude_sum()
    }

    /// Rigorous bound `2 pi sum_j j |(a_j, b_j)|` on `sup |p'|`.
    pub fn upper_deriv_bound(&self) -> f64 {
        TAU * self.harmonics.iter().enumerate().map(|(i, &(a, b))| (i + 1) as f64 * a.hypot(b)).sum::<f64>()
    }

    /// Coefficient-wise `alpha * self + beta * other`.
    pub fn linear_combination(&self, alpha: f64, other: &PeriodicMap, beta: f64) -> PeriodicMap {
        let d = self.degree().max(other.degree());
        let coef = |m: &PeriodicMap, j: usize| m.harmonics.get(j).copied().unwrap_or((0.0, 0.0));
        let harmonics = (0..d)
            .map(|j| {
                let (a1, b1) = coef(self, j);
                let (a2, b2) = coef(other, j);
                (alpha * a1 + beta * a2, alpha * b1 + beta * b2)
            })
            .collect();
        PeriodicMap { a0: alpha * self.a0 + beta * other.a0, harmonics }
    }

    pub fn scaled(&self, factor: f64) -> PeriodicMap {
        PeriodicMap {
            a0: factor * self.a0,
            harmonics: self.harmonics.iter().map(|&(a, b)| (factor * a, factor * b)).collect(),
        }
    }
}

impl std::ops::Neg for &PeriodicMap {
    type Output = PeriodicMap;

    fn neg(self) -> PeriodicMap {
        self.scaled(-1.0)
    }
}

/// Fractional part in `[0, 1)`; exact in binary64.
fn phase(s: f64) -> f64 {
    let t = s - s.floor();
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}
