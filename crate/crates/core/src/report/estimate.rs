//! One estimate: subject, method, scan, fit, prediction and verdict.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modcoeffs::{classify_rational_point, load_or_generate, rational_to_f64, CoefficientSequence, CuspKind, SequenceName};
use crate::regularity::{
    cone_scan, estimate_beta_oscillation, estimate_beta_star, estimate_beta_starstar, fit_slope, fixture_cone_scan,
    leader_scan, predict_exponents, vertical_scan, ConeParams, DecayModel, LeaderParams, LocalParams, ProbePoint,
    RegularityPrediction, ScaleRange, ScaleScan,
};
use crate::series::{fixture_exponents, Fixture, Flavor, SeriesSignal, SeriesSpec};

/// Default number of coefficients materialized for estimates.
pub const DEFAULT_TERMS: usize = 1 << 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Wavelet modulus over a cone above `x₀`: `β`.
    Cone,
    /// Wavelet modulus over boxes around `x₀`: `β` at cusps of cusp forms.
    Leader,
    /// Finite differences of `f` at `x₀`: `β`.
    Oscillation,
    /// First differences of derivatives at `x₀`: `β*`.
    Restricted,
    /// Moduli of continuity near `x₀`: `β**`.
    Local,
    /// Decay of `f(x₀ + iy)`.
    Vertical,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Cone => "cone",
            Method::Leader => "leader",
            Method::Oscillation => "oscillation",
            Method::Restricted => "restricted",
            Method::Local => "local",
            Method::Vertical => "vertical",
        }
    }

    pub fn default_scales(self) -> ScaleRange {
        let (a, b) = match self {
            Method::Cone => (6, 16),
            Method::Leader => (4, 8),
            Method::Oscillation | Method::Restricted => (4, 16),
            Method::Local => (12, 20),
            Method::Vertical => (2, 16),
        };
        ScaleRange { start: a, end: b }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Method::Cone | Method::Vertical => 0.10,
            Method::Leader | Method::Restricted => 0.2,
            Method::Oscillation => 0.3,
            Method::Local => 0.15,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cone" => Method::Cone,
            "leader" => Method::Leader,
            "oscillation" => Method::Oscillation,
            "restricted" => Method::Restricted,
            "local" => Method::Local,
            "vertical" => Method::Vertical,
            _ => {
                return Err(Error::Input(format!(
                    "unknown method `{s}` (cone, leader, oscillation, restricted, local, vertical)"
                )))
            }
        })
    }
}

/// `p/q`, an integer or a terminating decimal, kept exact.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Input(format!("`{s}` is not a rational number"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let whole: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
    let den = 10i64.pow(frac.len() as u32);
    let num: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let magnitude = Rational64::new(whole.abs() * den + num, den);
    Ok(if negative { -magnitude } else { magnitude })
}

/// What is being analysed.
#[derive(Debug, Clone)]
pub enum Subject {
    Series { seq: Arc<CoefficientSequence>, alpha: Rational64 },
    Fixture(Fixture),
}

impl Subject {
    /// A built-in sequence (generated or read from `cache_dir`) or a fixture.
    /// For `power_cusp` the exponent comes from `alpha` and the cusp sits at
    /// `point`.
    pub fn resolve(
        name: &str,
        alpha: Option<Rational64>,
        point: ProbePoint,
        terms: usize,
        cache_dir: Option<&std::path::Path>,
    ) -> Result<Self> {
        match name {
            "chirp4" => Ok(Subject::Fixture(Fixture::Chirp4)),
            "extreme_chirp" => Ok(Subject::Fixture(Fixture::ExtremeChirp)),
            "power_cusp" => {
                let s = alpha.map_or(0.5, rational_to_f64);
                Ok(Subject::Fixture(Fixture::power_cusp(s, point.value())?))
            }
            _ => {
                let seq_name: SequenceName = name.parse()?;
                let alpha = alpha.ok_or_else(|| Error::Input(format!("{name} needs --alpha")))?;
                let seq = load_or_generate(seq_name, terms, cache_dir)?;
                Ok(Subject::Series { seq: Arc::new(seq), alpha })
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Subject::Series { seq, .. } => seq.name.clone(),
            Subject::Fixture(f) => f.name().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictedTriple {
    pub beta: Option<f64>,
    pub beta_star: Option<f64>,
    pub beta_starstar: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimated {
    pub value: f64,
    pub stderr: f64,
    pub r2: f64,
    pub window: (i32, i32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

/// What the estimate is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    /// `|estimate − target| ≤ tolerance`.
    Within { target: f64, tolerance: f64 },
    /// `estimate ≥ bound`.
    AtLeast { bound: f64 },
    /// The vertical scan picks this model (with `r² ≥ min_r2`), and for a
    /// power law the exponent is within `tolerance` of `exponent`.
    Decay { model: DecayModel, exponent: Option<f64>, tolerance: f64, min_r2: f64 },
    /// Estimated for information only.
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub series: String,
    pub alpha: Option<String>,
    pub point: String,
    pub method: Method,
    pub predicted: PredictedTriple,
    pub estimated: Estimated,
    pub expectation: Expectation,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay: Option<DecayModel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub conditions: String,
    #[serde(skip)]
    pub scan: Option<ScaleScan>,
}

#[derive(Debug, Clone)]
pub struct EstimateRequest {
    pub subject: Subject,
    pub point: ProbePoint,
    pub method: Method,
    pub scales: Option<ScaleRange>,
    pub window: Option<ScaleRange>,
    pub tolerance: Option<f64>,
    /// Overrides the expectation derived from the prediction.
    pub expectation: Option<Expectation>,
    /// Terms of the series used by the real-line estimators.
    pub terms: usize,
}

impl EstimateRequest {
    pub fn new(subject: Subject, point: ProbePoint, method: Method) -> Self {
        Self { subject, point, method, scales: None, window: None, tolerance: None, expectation: None, terms: DEFAULT_TERMS }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn triple_of(p: &RegularityPrediction) -> PredictedTriple {
    PredictedTriple {
        beta: p.beta.map(rational_to_f64),
        beta_star: p.beta_star.map(rational_to_f64),
        beta_starstar: p.beta_starstar.map(rational_to_f64),
    }
}

/// Decay expected along the vertical above `point`.
fn expected_decay(seq: &CoefficientSequence, point: ProbePoint) -> Result<Option<(DecayModel, Option<f64>)>> {
    let r = seq.weight_f64();
    Ok(match point {
        ProbePoint::Rational(p, q) => match classify_rational_point(seq, p, q)?.kind {
            CuspKind::Cuspidal => Some((DecayModel::Exponential, None)),
            CuspKind::NotCuspidal => Some((DecayModel::PowerLaw, Some(-r))),
        },
        ProbePoint::Irrational(_) if seq.is_cusp_form => Some((DecayModel::PowerLaw, Some(-r / 2.0))),
        ProbePoint::Irrational(_) => None,
    })
}

pub fn run_estimate(req: &EstimateRequest) -> Result<EstimateReport> {
    let scales = req.scales.unwrap_or_else(|| req.method.default_scales());
    let window = req.window.unwrap_or(scales);
    let x0 = req.point.value();

    let (predicted, conditions, alpha_text) = match &req.subject {
        Subject::Series { seq, alpha } => {
            if *alpha <= seq.growth_exponent && req.method != Method::Vertical {
                return Err(Error::Input(format!(
                    "{}: α = {alpha} must exceed the growth exponent {}",
                    seq.name, seq.growth_exponent
                )));
            }
            let p = predict_exponents(seq, *alpha, &req.point)?;
            (triple_of(&p), p.conditions_report.clone(), Some(alpha.to_string()))
        }
        Subject::Fixture(f) => {
            let t = fixture_exponents(f);
            let triple = PredictedTriple {
                beta: finite(t.beta),
                beta_star: finite(t.beta_star),
                beta_starstar: finite(t.beta_starstar),
            };
            let alpha = match f {
                Fixture::PowerCusp { s, .. } => Some(s.to_string()),
                _ => None,
            };
            (triple, format!("fixture {} with exponents ({}, {}, {})", f.name(), t.beta, t.beta_star, t.beta_starstar), alpha)
        }
    };

    let mut decay = None;
    let mut order = None;
    let (scan, estimated) = match (&req.subject, req.method) {
        (Subject::Series { seq, alpha }, Method::Cone) => {
            let params = ConeParams { scales, ..ConeParams::default() };
            let scan = cone_scan(seq, rational_to_f64(*alpha), x0, &params)?;
            let fit = fit_slope(&scan, window)?;
            (scan, Estimated { value: fit.slope, stderr: fit.stderr, r2: fit.r_squared, window: fit.fit_range })
        }
        (Subject::Fixture(Fixture::ExtremeChirp), Method::Cone) => {
            return Err(Error::Inapplicable("extreme_chirp overflows near its singular point; no wavelet quadrature".into()));
        }
        (Subject::Fixture(f), Method::Cone) => {
            let alpha = 2.0 + predicted.beta.unwrap_or(0.0).ceil();
            let params = ConeParams { width: 1.0, sweep: 9, scales };
            let kink = Some(f.point());
            let scan = fixture_cone_scan(|t| f.eval(t).expect("fixture defined off its singular point"), kink, alpha, x0, &params)?;
            let fit = fit_slope(&scan, window)?;
            (scan, Estimated { value: fit.slope, stderr: fit.stderr, r2: fit.r_squared, window: fit.fit_range })
        }
        (Subject::Series { seq, alpha }, Method::Leader) => {
            let params = LeaderParams { scales, ..LeaderParams::default() };
            let scan = leader_scan(seq, rational_to_f64(*alpha), x0, &params)?;
            let fit = fit_slope(&scan, window)?;
            (scan, Estimated { value: fit.slope, stderr: fit.stderr, r2: fit.r_squared, window: fit.fit_range })
        }
        (Subject::Series { seq, .. }, Method::Vertical) => {
            let (scan, fit) = vertical_scan(seq, x0, scales)?;
            decay = Some(fit.model);
            let usable: Vec<i32> = scan.points.iter().filter(|p| p.log2_modulus.is_some()).map(|p| p.j).collect();
            let range = (usable[0], usable[usable.len() - 1]);
            (scan, Estimated { value: fit.exponent_or_rate, stderr: f64::NAN, r2: fit.r_squared, window: range })
        }
        (Subject::Fixture(_), Method::Vertical | Method::Leader) => {
            return Err(Error::Inapplicable(format!("{} needs a coefficient sequence", req.method)));
        }
        (_, Method::Oscillation | Method::Restricted | Method::Local) => {
            let signal: Box<dyn crate::series::Signal> = match &req.subject {
                Subject::Series { seq, alpha } => {
                    let spec = SeriesSpec::new(Arc::clone(seq), rational_to_f64(*alpha), Flavor::Complex)?;
                    Box::new(SeriesSignal::new(spec, req.terms.min(seq.len()))?)
                }
                Subject::Fixture(f) => Box::new(*f),
            };
            match req.method {
                Method::Oscillation => {
                    let (m, fit) = estimate_beta_oscillation(signal.as_ref(), x0, scales, window, None)?;
                    order = Some(m);
                    let scan = crate::regularity::oscillation_scan(
                        signal.as_ref(),
                        x0,
                        &crate::regularity::OscillationParams::new(m, scales),
                    )?;
                    (scan, Estimated { value: fit.slope, stderr: fit.stderr, r2: fit.r_squared, window: fit.fit_range })
                }
                Method::Restricted => {
                    let est = estimate_beta_star(signal.as_ref(), x0, scales, window)?;
                    order = Some(est.order);
                    let params = crate::regularity::OscillationParams {
                        derivative: est.order,
                        ..crate::regularity::OscillationParams::new(1, scales)
                    };
                    let scan = crate::regularity::oscillation_scan(signal.as_ref(), x0, &params)
                        .unwrap_or_else(|_| ScaleScan::new(crate::regularity::ScanKind::Oscillation));
                    (scan, Estimated { value: est.value, stderr: f64::NAN, r2: f64::NAN, window: (window.start, window.end) })
                }
                _ => {
                    let params = LocalParams { scales, ..LocalParams::default() };
                    let est = estimate_beta_starstar(signal.as_ref(), x0, &params, window, 8)?;
                    order = Some(est.order);
                    let scan = crate::regularity::local_pair_scan(signal.as_ref(), est.order, x0, &params)?;
                    let fit = est.last_fit;
                    (scan, Estimated { value: est.value, stderr: fit.stderr, r2: fit.r_squared, window: fit.fit_range })
                }
            }
        }
    };

    let expectation = match req.expectation {
        Some(e) => e,
        None => default_expectation(req, &predicted)?,
    };
    let verdict = judge(&expectation, &estimated, decay);
    Ok(EstimateReport {
        series: req.subject.name(),
        alpha: alpha_text,
        point: req.point.to_string(),
        method: req.method,
        predicted,
        estimated,
        expectation,
        verdict,
        decay,
        order,
        conditions,
        scan: Some(scan),
    })
}

fn default_expectation(req: &EstimateRequest, predicted: &PredictedTriple) -> Result<Expectation> {
    let tolerance = req.tolerance.unwrap_or_else(|| req.method.default_tolerance());
    let target = match req.method {
        Method::Cone | Method::Leader | Method::Oscillation => predicted.beta,
        Method::Restricted => predicted.beta_star,
        Method::Local => predicted.beta_starstar,
        Method::Vertical => {
            let Subject::Series { seq, .. } = &req.subject else { return Ok(Expectation::None) };
            return Ok(match expected_decay(seq, req.point)? {
                Some((model, exponent)) => Expectation::Decay { model, exponent, tolerance: 0.15, min_r2: 0.99 },
                None => Expectation::None,
            });
        }
    };
    Ok(target.map_or(Expectation::None, |target| Expectation::Within { target, tolerance }))
}

pub fn judge(expectation: &Expectation, est: &Estimated, decay: Option<DecayModel>) -> Verdict {
    let ok = match *expectation {
        Expectation::Within { target, tolerance } => (est.value - target).abs() <= tolerance,
        Expectation::AtLeast { bound } => est.value >= bound,
        Expectation::Decay { model, exponent, tolerance, min_r2 } => {
            decay == Some(model)
                && match (model, exponent) {
                    (DecayModel::PowerLaw, Some(e)) => (est.value - e).abs() <= tolerance,
                    _ => est.r2 >= min_r2,
                }
        }
        Expectation::None => return Verdict::Inapplicable,
    };
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Writes `<stem>.csv` (the scan) and `<stem>.json` (the report).
pub fn write_estimate(report: &EstimateReport, stem: &std::path::Path) -> Result<(PathBuf, PathBuf)> {
    let csv = stem.with_extension("csv");
    let json = stem.with_extension("json");
    if let Some(scan) = &report.scan {
        super::write_atomic(&csv, scan.to_csv().as_bytes())?;
    }
    super::write_atomic(&json, super::to_json_pretty(report)?.as_bytes())?;
    Ok((csv, json))
}
