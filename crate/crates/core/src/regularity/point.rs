//! Probe points: reduced rationals and a few named quadratic irrationals.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numtheory::gcd;

/// Badly approximable irrationals in `(0, 1)`, selected by keyword so that a
/// decimal literal never silently becomes a rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrrationalTag {
    /// `√2 − 1 = [0; 2, 2, 2, …]`
    Sqrt2m1,
    /// `(√5 − 1)/2 = [0; 1, 1, 1, …]`
    Golden,
    /// `√5 − 2 = [0; 4, 4, 4, …]`
    Sqrt5m2,
    /// `(√13 − 3)/2 = [0; 3, 3, 3, …]`
    Sqrt13m3h,
}

impl IrrationalTag {
    pub const ALL: [IrrationalTag; 4] =
        [IrrationalTag::Sqrt2m1, IrrationalTag::Golden, IrrationalTag::Sqrt5m2, IrrationalTag::Sqrt13m3h];

    pub fn keyword(self) -> &'static str {
        match self {
            IrrationalTag::Sqrt2m1 => "sqrt2m1",
            IrrationalTag::Golden => "golden",
            IrrationalTag::Sqrt5m2 => "sqrt5m2",
            IrrationalTag::Sqrt13m3h => "sqrt13m3h",
        }
    }

    pub fn value(self) -> f64 {
        match self {
            IrrationalTag::Sqrt2m1 => std::f64::consts::SQRT_2 - 1.0,
            IrrationalTag::Golden => (5f64.sqrt() - 1.0) / 2.0,
            IrrationalTag::Sqrt5m2 => 5f64.sqrt() - 2.0,
            IrrationalTag::Sqrt13m3h => (13f64.sqrt() - 3.0) / 2.0,
        }
    }

    /// The repeated continued-fraction partial quotient.
    pub fn partial_quotient(self) -> u32 {
        match self {
            IrrationalTag::Sqrt2m1 => 2,
            IrrationalTag::Golden => 1,
            IrrationalTag::Sqrt5m2 => 4,
            IrrationalTag::Sqrt13m3h => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbePoint {
    /// Reduced `p/q` with `q > 0`.
    Rational(i64, i64),
    Irrational(IrrationalTag),
}

impl ProbePoint {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Input("zero denominator".into()));
        }
        let g = gcd(p, q).max(1);
        let (p, q) = (p / g, q / g);
        Ok(if q < 0 { ProbePoint::Rational(-p, -q) } else { ProbePoint::Rational(p, q) })
    }

    pub fn value(self) -> f64 {
        match self {
            ProbePoint::Rational(p, q) => p as f64 / q as f64,
            ProbePoint::Irrational(tag) => tag.value(),
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, ProbePoint::Rational(..))
    }
}

impl fmt::Display for ProbePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbePoint::Rational(p, 1) => write!(f, "{p}"),
            ProbePoint::Rational(p, q) => write!(f, "{p}/{q}"),
            ProbePoint::Irrational(tag) => f.write_str(tag.keyword()),
        }
    }
}

impl FromStr for ProbePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(tag) = IrrationalTag::ALL.iter().find(|t| t.keyword() == s) {
            return Ok(ProbePoint::Irrational(*tag));
        }
        let bad = || {
            Error::Input(format!(
                "point {s:?}: expected p/q, an integer, or one of sqrt2m1, golden, sqrt5m2, sqrt13m3h"
            ))
        };
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (s.parse().map_err(|_| bad())?, 1),
        };
        ProbePoint::rational(p, q)
    }
}
