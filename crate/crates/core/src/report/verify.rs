//! Verification suites: estimates against predictions, one row each.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Rational64;
use serde::Serialize;

use super::estimate::{run_estimate, EstimateReport, EstimateRequest, Expectation, Method, Subject, Verdict, DEFAULT_TERMS};
use crate::error::{Error, Result};
use crate::modcoeffs::{load_or_generate, CoefficientSequence, SequenceName};
use crate::regularity::{DecayModel, IrrationalTag, ProbePoint};
use crate::series::Fixture;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Quick,
    Full,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Suite::Quick),
            "full" => Ok(Suite::Full),
            _ => Err(Error::Input(format!("unknown suite `{s}` (quick, full)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum RowSubject {
    Series(SequenceName, i64, i64),
    Fixture(Fixture),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteRow {
    subject: RowSubject,
    point: ProbePoint,
    method: Method,
    expectation: Option<Expectation>,
}

const SQRT2M1: ProbePoint = ProbePoint::Irrational(IrrationalTag::Sqrt2m1);
const GOLDEN: ProbePoint = ProbePoint::Irrational(IrrationalTag::Golden);

fn series(name: SequenceName, alpha: (i64, i64), point: ProbePoint, method: Method) -> SuiteRow {
    SuiteRow { subject: RowSubject::Series(name, alpha.0, alpha.1), point, method, expectation: None }
}

fn fixture(f: Fixture, method: Method, tolerance: f64, target: f64) -> SuiteRow {
    SuiteRow {
        subject: RowSubject::Fixture(f),
        point: ProbePoint::Rational(0, 1),
        method,
        expectation: Some(Expectation::Within { target, tolerance }),
    }
}

impl SuiteRow {
    fn expecting(mut self, e: Expectation) -> Self {
        self.expectation = Some(e);
        self
    }
}

pub fn suite_rows(suite: Suite) -> Vec<SuiteRow> {
    use Method::*;
    use SequenceName::*;
    let cusp = Fixture::power_cusp(0.5, 0.0).expect("valid fixture");
    let mut rows = vec![
        series(Elliptic14, (7, 4), SQRT2M1, Cone),
        series(Theta12, (1, 1), SQRT2M1, Cone),
        series(Harmonic, (13, 4), SQRT2M1, Cone),
        series(Jacobi, (1, 1), ProbePoint::Rational(0, 1), Cone),
        fixture(Fixture::Chirp4, Oscillation, 0.3, 4.0),
        fixture(cusp, Oscillation, 0.05, 0.5),
    ];
    if suite == Suite::Full {
        rows.extend([
            series(Elliptic14, (7, 4), GOLDEN, Cone),
            series(Theta12, (1, 1), GOLDEN, Cone),
            series(Harmonic, (13, 4), GOLDEN, Cone),
            series(Harmonic, (13, 4), ProbePoint::Rational(0, 1), Leader),
            series(Harmonic, (13, 4), ProbePoint::Rational(1, 2), Leader),
            series(Elliptic14, (7, 4), ProbePoint::Rational(0, 1), Leader).expecting(Expectation::AtLeast { bound: 1.2 }),
            series(Elliptic14, (7, 4), ProbePoint::Rational(0, 1), Vertical),
            series(Jacobi, (1, 1), ProbePoint::Rational(1, 3), Cone),
            series(Jacobi, (1, 1), ProbePoint::Rational(1, 2), Vertical).expecting(Expectation::Decay {
                model: DecayModel::Exponential,
                exponent: None,
                tolerance: 0.0,
                min_r2: 0.99,
            }),
            series(Eisenstein(4), (5, 1), ProbePoint::Rational(0, 1), Cone),
            series(Eisenstein(4), (5, 1), ProbePoint::Rational(1, 3), Cone),
            fixture(Fixture::Chirp4, Restricted, 0.2, 2.0),
            fixture(Fixture::Chirp4, Local, 0.15, 4.0 / 3.0),
            fixture(cusp, Restricted, 0.05, 0.5),
            fixture(cusp, Local, 0.05, 0.5),
        ]);
    }
    rows
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    #[serde(flatten)]
    pub report: Option<EstimateReport>,
    pub label: String,
    pub difference: Option<f64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationTable {
    pub suite: Suite,
    pub rows: Vec<VerifyRow>,
}

impl VerificationTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<44} {:>10} {:>10} {:>9} {:>12}",
            "row", "predicted", "estimate", "|diff|", "verdict"
        );
        for row in &self.rows {
            let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
            let (pred, est) = match &row.report {
                Some(r) => (expected_text(&r.expectation), Some(r.estimated.value)),
                None => ("-".to_string(), None),
            };
            let _ = writeln!(
                out,
                "{:<44} {:>10} {:>10} {:>9} {:>12}",
                row.label,
                pred,
                fmt(est),
                fmt(row.difference),
                row.verdict.name()
            );
            if let Some(e) = &row.error {
                let _ = writeln!(out, "    error: {e}");
            }
        }
        let passed = self.rows.iter().filter(|r| r.verdict == Verdict::Pass).count();
        let _ = writeln!(out, "{passed}/{} rows pass", self.rows.len());
        out
    }
}

fn target_of(e: &Expectation) -> Option<f64> {
    match *e {
        Expectation::Within { target, .. } => Some(target),
        Expectation::Decay { exponent, .. } => exponent,
        Expectation::AtLeast { .. } | Expectation::None => None,
    }
}

fn expected_text(e: &Expectation) -> String {
    match *e {
        Expectation::Within { target, .. } => format!("{target:.4}"),
        Expectation::AtLeast { bound } => format!(">={bound:.4}"),
        Expectation::Decay { model: DecayModel::Exponential, .. } => "exp".to_string(),
        Expectation::Decay { exponent: Some(e), .. } => format!("{e:.4}"),
        _ => "-".to_string(),
    }
}

fn label(row: &SuiteRow) -> String {
    match row.subject {
        RowSubject::Series(name, p, q) => {
            format!("{name} alpha={} x0={} {}", Rational64::new(p, q), row.point, row.method)
        }
        RowSubject::Fixture(f) => format!("{} x0={} {}", f.name(), f.point(), row.method),
    }
}

/// Runs every row; a row that errors fails with the message attached.
pub fn run_suite(suite: Suite, cache_dir: Option<&Path>) -> Result<VerificationTable> {
    let mut sequences: HashMap<SequenceName, Arc<CoefficientSequence>> = HashMap::new();
    let mut rows = Vec::new();
    for row in suite_rows(suite) {
        let subject = match row.subject {
            RowSubject::Series(name, p, q) => {
                let seq = match sequences.get(&name) {
                    Some(s) => Arc::clone(s),
                    None => {
                        let s = Arc::new(load_or_generate(name, DEFAULT_TERMS, cache_dir)?);
                        sequences.insert(name, Arc::clone(&s));
                        s
                    }
                };
                Subject::Series { seq, alpha: Rational64::new(p, q) }
            }
            RowSubject::Fixture(f) => Subject::Fixture(f),
        };
        let request = EstimateRequest { expectation: row.expectation, ..EstimateRequest::new(subject, row.point, row.method) };
        rows.push(match run_estimate(&request) {
            Ok(report) => {
                let difference = target_of(&report.expectation).map(|t| (report.estimated.value - t).abs());
                let verdict = match report.verdict {
                    Verdict::Inapplicable => Verdict::Fail,
                    v => v,
                };
                VerifyRow { label: label(&row), difference, verdict, error: None, report: Some(report) }
            }
            Err(e) => VerifyRow { label: label(&row), difference: None, verdict: Verdict::Fail, error: Some(e.to_string()), report: None },
        });
    }
    Ok(VerificationTable { suite, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_quick_row_has_a_target() {
        for row in suite_rows(Suite::Quick) {
            if let RowSubject::Series(name, p, q) = row.subject {
                let seq = load_or_generate(name, 64, None).unwrap();
                let pred = crate::regularity::predict_exponents(&seq, Rational64::new(p, q), &row.point).unwrap();
                assert!(pred.beta.is_some(), "{}", label(&row));
            }
        }
        assert!(suite_rows(Suite::Full).len() > suite_rows(Suite::Quick).len());
    }
}
