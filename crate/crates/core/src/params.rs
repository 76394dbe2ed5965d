use serde::Serialize;

use crate::error::{Error, Result};

/// Regime parameter `c = log2(k/2)`.
pub fn derive_c(k: f64) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("k must be a positive finite number, got {k}")));
    }
    Ok((k / 2.0).log2())
}

/// One instance of `f(x^2 R) = k/(2xR) f(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquationParams {
    #[serde(rename = "R")]
    r: f64,
    k: f64,
    c: f64,
}

impl EquationParams {
    pub fn new(r: f64, k: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("R must be a positive finite number, got {r}")));
        }
        let c = derive_c(k)?;
        Ok(Self { r, k, c })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// The fixed point `1/R` of `x -> x^2 R`.
    pub fn boundary(&self) -> f64 {
        1.0 / self.r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_values() {
        assert_eq!(derive_c(2.0).unwrap(), 0.0);
        assert_eq!(derive_c(4.0).unwrap(), 1.0);
        assert_eq!(derive_c(1.0).unwrap(), -1.0);
        assert!((derive_c(3.0).unwrap() - 1.5f64.log2()).abs() < 1e-16);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(derive_c(0.0), Err(Error::Domain(_))));
        assert!(matches!(derive_c(-1.0), Err(Error::Domain(_))));
        assert!(matches!(derive_c(f64::NAN), Err(Error::Domain(_))));
        assert!(EquationParams::new(0.0, 2.0).is_err());
        assert!(EquationParams::new(-3.0, 2.0).is_err());
        assert!(EquationParams::new(1.0, 0.0).is_err());
    }

    #[test]
    fn boundary_is_reciprocal() {
        let p = EquationParams::new(4.0, 3.0).unwrap();
        assert_eq!(p.boundary(), 0.25);
        assert_eq!(p.c(), derive_c(3.0).unwrap());
    }
}
