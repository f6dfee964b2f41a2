//! Closed-form test functions with known exponents at a distinguished point.

use num_complex::Complex64;

use super::Signal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fixture {
    /// `|x − x₀|^s`, `0 < s ≤ 1`.
    PowerCusp { s: f64, x0: f64 },
    /// `x⁴ sin(x⁻²)`, 0 at 0.
    Chirp4,
    /// `e^{−x⁻²} sin(e^{x⁻⁴})`, 0 at 0.
    ExtremeChirp,
}

/// `(β, β*, β**)`; `f64::INFINITY` stands for an infinite exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentTriple {
    pub beta: f64,
    pub beta_star: f64,
    pub beta_starstar: f64,
}

impl Fixture {
    pub fn power_cusp(s: f64, x0: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) || !x0.is_finite() {
            return Err(Error::Input(format!("power cusp needs 0 < s ≤ 1, got s = {s}")));
        }
        Ok(Fixture::PowerCusp { s, x0 })
    }

    pub fn point(&self) -> f64 {
        match *self {
            Fixture::PowerCusp { x0, .. } => x0,
            Fixture::Chirp4 | Fixture::ExtremeChirp => 0.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Fixture::PowerCusp { .. } => "power_cusp",
            Fixture::Chirp4 => "chirp4",
            Fixture::ExtremeChirp => "extreme_chirp",
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match *self {
            Fixture::PowerCusp { s, x0 } => Ok((x - x0).abs().powf(s)),
            Fixture::Chirp4 if x == 0.0 => Ok(0.0),
            Fixture::Chirp4 => Ok(x.powi(4) * (x * x).recip().sin()),
            Fixture::ExtremeChirp => {
                if x == 0.0 {
                    return Ok(0.0);
                }
                let inv2 = (x * x).recip();
                let envelope = (-inv2).exp();
                if envelope == 0.0 {
                    return Ok(0.0);
                }
                let inner = (inv2 * inv2).exp();
                if !inner.is_finite() {
                    return Err(Error::Domain(format!("e^(x^-4) overflows at x = {x}")));
                }
                Ok(envelope * inner.sin())
            }
        }
    }

    /// `f^{(k)}(x)` where it is continuous near the distinguished point.
    pub fn eval_derivative(&self, k: u32, x: f64) -> Result<f64> {
        self.derivative_available(k)?;
        match (*self, k) {
            (_, 0) => self.eval(x),
            (Fixture::Chirp4, 1) if x == 0.0 => Ok(0.0),
            (Fixture::Chirp4, 1) => {
                let u = (x * x).recip();
                Ok(4.0 * x.powi(3) * u.sin() - 2.0 * x * u.cos())
            }
            _ => unreachable!("availability checked above"),
        }
    }

    fn derivative_available(&self, k: u32) -> Result<()> {
        let max = match self {
            Fixture::PowerCusp { .. } | Fixture::ExtremeChirp => 0,
            Fixture::Chirp4 => 1,
        };
        if k > max {
            let reason = match self {
                Fixture::PowerCusp { .. } => "not continuous at the cusp",
                Fixture::Chirp4 => "f'' is unbounded near 0",
                Fixture::ExtremeChirp => "f' is unbounded near 0",
            };
            return Err(Error::DerivativeUnavailable { order: k, reason: reason.into() });
        }
        Ok(())
    }
}

impl Signal for Fixture {
    fn derivative(&self, k: u32, x: f64) -> Result<Complex64> {
        Ok(Complex64::new(self.eval_derivative(k, x)?, 0.0))
    }

    fn check_derivative(&self, k: u32) -> Result<()> {
        self.derivative_available(k)
    }
}

/// Exponents at the fixture's distinguished point.
pub fn fixture_exponents(fixture: &Fixture) -> ExponentTriple {
    match *fixture {
        Fixture::PowerCusp { s, .. } => ExponentTriple { beta: s, beta_star: s, beta_starstar: s },
        Fixture::Chirp4 => ExponentTriple { beta: 4.0, beta_star: 2.0, beta_starstar: 4.0 / 3.0 },
        // f ∈ Λ¹(0) with f continuous, f' unbounded: β* = 1.
        Fixture::ExtremeChirp => {
            ExponentTriple { beta: f64::INFINITY, beta_star: 1.0, beta_starstar: 0.0 }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let cusp = Fixture::power_cusp(0.5, 0.25).unwrap();
        assert_eq!(cusp.eval(0.25).unwrap(), 0.0);
        assert!((cusp.eval(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(Fixture::Chirp4.eval(0.0).unwrap(), 0.0);
        let x: f64 = 0.3;
        assert!((Fixture::Chirp4.eval(x).unwrap() - x.powi(4) * (1.0 / (x * x)).sin()).abs() < 1e-15);
        assert_eq!(Fixture::ExtremeChirp.eval(0.01).unwrap(), 0.0);
        assert!(Fixture::ExtremeChirp.eval(0.1).is_err());
        assert!(Fixture::ExtremeChirp.eval(0.8).is_ok());
        assert!(Fixture::power_cusp(1.5, 0.0).is_err());
        assert!(Fixture::power_cusp(0.0, 0.0).is_err());
    }

    #[test]
    fn chirp_derivative_matches_difference_quotient() {
        for x in [0.3, 0.55, -0.41] {
            let h = 1e-7;
            let fd = (Fixture::Chirp4.eval(x + h).unwrap() - Fixture::Chirp4.eval(x - h).unwrap()) / (2.0 * h);
            let d = Fixture::Chirp4.eval_derivative(1, x).unwrap();
            assert!((fd - d).abs() < 1e-5 * d.abs().max(1.0), "{x}: {fd} vs {d}");
        }
        assert!(Fixture::Chirp4.eval_derivative(2, 0.3).is_err());
        assert!(Fixture::ExtremeChirp.eval_derivative(1, 0.3).is_err());
    }

    #[test]
    fn stated_exponents() {
        let t = fixture_exponents(&Fixture::Chirp4);
        assert_eq!((t.beta, t.beta_star), (4.0, 2.0));
        assert!((t.beta_starstar - 4.0 / 3.0).abs() < 1e-15);
        let t = fixture_exponents(&Fixture::power_cusp(0.5, 0.0).unwrap());
        assert_eq!((t.beta, t.beta_star, t.beta_starstar), (0.5, 0.5, 0.5));
        let t = fixture_exponents(&Fixture::ExtremeChirp);
        assert!(t.beta.is_infinite());
        assert_eq!(t.beta_starstar, 0.0);
    }
}
