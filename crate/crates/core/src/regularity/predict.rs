//! Closed-form exponent predictions, in exact rational arithmetic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Rational64;

use super::ProbePoint;
use crate::error::Result;
use crate::modcoeffs::{classify_rational_point, CoefficientSequence, CuspKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityPrediction {
    pub beta: Option<Rational64>,
    pub beta_star: Option<Rational64>,
    pub beta_starstar: Option<Rational64>,
    pub gamma: Option<Rational64>,
    pub theorem_tag: &'static str,
    pub applicable: bool,
    pub conditions_report: String,
}

impl RegularityPrediction {
    fn none(tag: &'static str, gamma: Option<Rational64>, report: String) -> Self {
        Self { beta: None, beta_star: None, beta_starstar: None, gamma, theorem_tag: tag, applicable: false, conditions_report: report }
    }

    /// `β ≥ β* ≥ β**` over the fields that are present.
    pub fn is_ordered(&self) -> bool {
        let present: Vec<Rational64> = [self.beta, self.beta_star, self.beta_starstar].into_iter().flatten().collect();
        present.windows(2).all(|w| w[0] >= w[1])
    }
}

fn floor(r: Rational64) -> Rational64 {
    r.floor()
}

fn fract(r: Rational64) -> Rational64 {
    r - r.floor()
}

/// `⌊u⌋ + min(1, 2{u})` with `u = α − r/2`.
fn restricted(u: Rational64) -> Rational64 {
    floor(u) + (fract(u) * 2).min(Rational64::from_integer(1))
}

/// Predicted `β`, `β*`, `β**` of `f_α` at `point`. Never errors on a failed
/// hypothesis: the prediction comes back with `applicable = false` and the
/// reason in `conditions_report`.
pub fn predict_exponents(seq: &CoefficientSequence, alpha: Rational64, point: &ProbePoint) -> Result<RegularityPrediction> {
    let r = seq.weight;
    let gamma = seq.growth_exponent;
    let one = Rational64::from_integer(1);
    if alpha <= gamma {
        return Ok(RegularityPrediction::none(
            "below-threshold",
            Some(gamma),
            format!("alpha = {alpha} does not exceed the growth exponent {gamma}"),
        ));
    }
    let mut report = String::new();
    match (seq.is_cusp_form, point) {
        (true, ProbePoint::Irrational(_)) => {
            let u = alpha - r / 2;
            let _ = write!(report, "cusp form at an irrational: all exponents alpha - r/2 = {u}");
            Ok(RegularityPrediction {
                beta: Some(u),
                beta_star: Some(u),
                beta_starstar: Some(u),
                gamma: Some(gamma),
                theorem_tag: "cusp-irrational",
                applicable: true,
                conditions_report: report,
            })
        }
        (true, ProbePoint::Rational(..)) => {
            let u = alpha - r / 2;
            let threshold = one + floor(alpha * 2 - r);
            let holds = alpha >= threshold;
            let _ = write!(report, "beta** = alpha - r/2 = {u}; condition alpha >= 1 + floor(2 alpha - r) = {threshold}: ");
            let (beta, beta_star) = if holds {
                let alt = floor(alpha * 2 - r) + (fract(u) * 2).min(one);
                let _ = write!(
                    report,
                    "holds; beta = 2 alpha - r = {}, beta* = floor(u) + min(1, 2 frac(u)) = {} \
                     (the variant floor(2 alpha - r) + min(1, 2 frac(u)) would give {alt})",
                    alpha * 2 - r,
                    restricted(u)
                );
                (Some(alpha * 2 - r), Some(restricted(u)))
            } else {
                let _ = write!(report, "fails; beta and beta* not predicted");
                (None, None)
            };
            Ok(RegularityPrediction {
                beta,
                beta_star,
                beta_starstar: Some(u),
                gamma: Some(gamma),
                theorem_tag: "cusp-rational",
                applicable: true,
                conditions_report: report,
            })
        }
        (false, ProbePoint::Rational(p, q)) => {
            let behavior = classify_rational_point(seq, *p, *q)?;
            if behavior.kind == CuspKind::Cuspidal {
                return Ok(RegularityPrediction::none(
                    "noncuspidal-rational",
                    Some(gamma),
                    format!("{} is cuspidal at {p}/{q} ({}); no prediction", seq.name, seq.cusp_rule.tag()),
                ));
            }
            let threshold = one + floor(alpha - r);
            let _ = write!(report, "not cuspidal at {p}/{q}; alpha > r: {}; alpha >= 1 + floor(alpha - r) = {threshold}: {}", alpha > r, alpha >= threshold);
            if alpha > r && alpha >= threshold {
                let _ = write!(report, "; beta = alpha - r = {}", alpha - r);
                Ok(RegularityPrediction {
                    beta: Some(alpha - r),
                    beta_star: None,
                    beta_starstar: None,
                    gamma: Some(gamma),
                    theorem_tag: "noncuspidal-rational",
                    applicable: true,
                    conditions_report: report,
                })
            } else {
                Ok(RegularityPrediction::none("noncuspidal-rational", Some(gamma), report))
            }
        }
        (false, ProbePoint::Irrational(_)) => Ok(RegularityPrediction::none(
            "out-of-scope",
            Some(gamma),
            format!("{} is not a cusp form; no prediction at irrationals", seq.name),
        )),
    }
}

/// Spectrum of singularities `δ ↦ d(δ)`; exponents not listed have `d = −∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub dimensions: BTreeMap<Rational64, u32>,
    pub applicable: bool,
    /// Whether `α ≥ 1 + ⌊2α − r⌋`, under which the rational exponent is `2α − r`.
    pub rational_condition: bool,
    pub report: String,
}

pub fn predict_spectrum(seq: &CoefficientSequence, alpha: Rational64) -> Spectrum {
    let r = seq.weight;
    if !seq.is_cusp_form || alpha <= r / 2 {
        return Spectrum {
            dimensions: BTreeMap::new(),
            applicable: false,
            rational_condition: false,
            report: format!("needs a cusp form with alpha > r/2 = {}", r / 2),
        };
    }
    let generic = alpha - r / 2;
    let rational = alpha * 2 - r;
    let condition = alpha >= Rational64::from_integer(1) + floor(rational);
    let mut dimensions = BTreeMap::new();
    dimensions.insert(rational, 0);
    dimensions.insert(generic, 1);
    Spectrum {
        dimensions,
        applicable: true,
        rational_condition: condition,
        report: format!(
            "irrationals: {generic} (dimension 1); rationals: {rational} (dimension 0); \
             rational condition alpha >= 1 + floor(2 alpha - r): {condition}"
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcoeffs::{eisenstein_sequence, harmonic_theta_sequence, jacobi_theta_sequence, elliptic14_sequence};
    use crate::regularity::IrrationalTag;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn elliptic_irrational() {
        let seq = elliptic14_sequence(64).unwrap();
        let p = predict_exponents(&seq, q(7, 4), &ProbePoint::Irrational(IrrationalTag::Sqrt2m1)).unwrap();
        assert_eq!((p.beta, p.beta_star, p.beta_starstar), (Some(q(3, 4)), Some(q(3, 4)), Some(q(3, 4))));
        let r = predict_exponents(&seq, q(7, 4), &ProbePoint::Rational(0, 1)).unwrap();
        assert_eq!((r.beta, r.beta_star, r.beta_starstar), (None, None, Some(q(3, 4))));
    }

    #[test]
    fn harmonic_rational() {
        let seq = harmonic_theta_sequence(64).unwrap();
        let p = predict_exponents(&seq, q(13, 4), &ProbePoint::Rational(1, 2)).unwrap();
        assert_eq!(p.beta, Some(q(3, 2)));
        assert_eq!(p.beta_star, Some(q(1, 1)));
        assert_eq!(p.beta_starstar, Some(q(3, 4)));
        assert!(p.is_ordered());
        assert!(p.conditions_report.contains("would give 2"), "{}", p.conditions_report);
    }

    #[test]
    fn noncuspidal_rationals() {
        let jacobi = jacobi_theta_sequence(64).unwrap();
        for (a, b) in [(0, 1), (1, 3), (1, 4)] {
            let p = predict_exponents(&jacobi, q(1, 1), &ProbePoint::Rational(a, b)).unwrap();
            assert_eq!(p.beta, Some(q(1, 2)));
        }
        let half = predict_exponents(&jacobi, q(1, 1), &ProbePoint::Rational(1, 2)).unwrap();
        assert!(!half.applicable && half.beta.is_none());
        let eis = eisenstein_sequence(4, 64).unwrap();
        let p = predict_exponents(&eis, q(5, 1), &ProbePoint::Rational(1, 3)).unwrap();
        assert_eq!(p.beta, Some(q(1, 1)));
        let below = predict_exponents(&jacobi, q(7, 4), &ProbePoint::Rational(0, 1)).unwrap();
        assert!(below.beta.is_none());
    }

    #[test]
    fn below_threshold_is_flagged() {
        let seq = harmonic_theta_sequence(64).unwrap();
        let p = predict_exponents(&seq, q(5, 2), &ProbePoint::Rational(0, 1)).unwrap();
        assert!(!p.applicable);
    }

    #[test]
    fn spectra() {
        let h = predict_spectrum(&harmonic_theta_sequence(64).unwrap(), q(13, 4));
        assert!(h.applicable && h.rational_condition);
        assert_eq!(h.dimensions, BTreeMap::from([(q(3, 4), 1), (q(3, 2), 0)]));
        let e = predict_spectrum(&elliptic14_sequence(64).unwrap(), q(7, 4));
        assert!(e.applicable && !e.rational_condition);
        assert_eq!(e.dimensions, BTreeMap::from([(q(3, 4), 1), (q(3, 2), 0)]));
        assert!(!predict_spectrum(&elliptic14_sequence(64).unwrap(), q(1, 1)).applicable);
        assert!(!predict_spectrum(&harmonic_theta_sequence(64).unwrap(), q(5, 2)).applicable);
    }
}
