//! Decay of `f(x₀ + iy)` as `y → 0⁺`: power law at generic points,
//! `e^{−K/y}` at cusps where the form vanishes.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use super::{fit_linear, ScaleRange, ScaleScan, ScanKind};
use crate::error::{Error, Result};
use crate::modcoeffs::CoefficientSequence;
use crate::series::{auto_halfplane_terms, eval_halfplane, halfplane_tail};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayModel {
    PowerLaw,
    Exponential,
    /// Neither model wins by the required r² margin.
    Ambiguous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayFit {
    pub model: DecayModel,
    /// Power law: slope of `log|f|` against `log y`. Exponential: `K` in
    /// `|f| ≈ A e^{−K/y}`. Ambiguous: the power-law slope.
    pub exponent_or_rate: f64,
    pub r_squared: f64,
    pub power_r_squared: f64,
    pub power_exponent: f64,
    pub exponential_r_squared: f64,
    pub exponential_rate: f64,
    pub n_points: usize,
}

/// r² margin by which one model must beat the other.
pub const MODEL_MARGIN: f64 = 0.05;

/// `log₂|f(x₀ + i2^{−j})|` over `j` (the constant term included: at a cusp
/// where the form vanishes, `f` itself decays), followed by the model choice.
///
/// Rows where `|f|` is within rounding of the terms it sums, or where the
/// truncation tail is comparable to it, are sentinels.
pub fn vertical_scan(coeffs: &CoefficientSequence, x0: f64, scales: ScaleRange) -> Result<(ScaleScan, DecayFit)> {
    let mut scan = ScaleScan::new(ScanKind::Vertical).param("x0", x0).param("scales", scales);
    for j in scales.iter() {
        let y = (-j as f64).exp2();
        let n = auto_halfplane_terms(coeffs, y);
        let f = eval_halfplane(coeffs, x0, y, Some(n))?.norm();
        let magnitude: f64 = coeffs.a0.norm()
            + coeffs.terms()[..n]
                .iter()
                .enumerate()
                .map(|(i, a)| a.norm() * (-2.0 * PI * y * (i + 1) as f64).exp())
                .sum::<f64>();
        let floor = 1e3 * f64::EPSILON * magnitude + 10.0 * halfplane_tail(coeffs, y, n);
        if f > floor {
            scan.push(j, -j as f64, f);
        } else {
            scan.push_sentinel(j, -j as f64);
        }
    }
    let scan = scan.finish()?;
    let fit = classify_decay(&scan)?;
    Ok((scan, fit))
}

fn classify_decay(scan: &ScaleScan) -> Result<DecayFit> {
    let rows: Vec<(f64, f64)> =
        scan.points.iter().filter_map(|p| p.log2_modulus.map(|m| (p.log2_scale, m))).collect();
    if rows.len() < 4 {
        return Err(Error::Fit(format!("{} usable vertical points, need at least 4", rows.len())));
    }
    let log_y: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let log_f: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let power = fit_linear(&log_y, &log_f)?;
    // ln|f| = ln A − K / y
    let inv_y: Vec<f64> = log_y.iter().map(|l| (-l).exp2()).collect();
    let ln_f: Vec<f64> = log_f.iter().map(|l| l * LN_2).collect();
    let expo = fit_linear(&inv_y, &ln_f)?;
    let (model, value, r2) = if expo.r_squared >= power.r_squared + MODEL_MARGIN {
        (DecayModel::Exponential, -expo.slope, expo.r_squared)
    } else if power.r_squared >= expo.r_squared + MODEL_MARGIN {
        (DecayModel::PowerLaw, power.slope, power.r_squared)
    } else {
        (DecayModel::Ambiguous, power.slope, power.r_squared)
    };
    Ok(DecayFit {
        model,
        exponent_or_rate: value,
        r_squared: r2,
        power_r_squared: power.r_squared,
        power_exponent: power.slope,
        exponential_r_squared: expo.r_squared,
        exponential_rate: -expo.slope,
        n_points: rows.len(),
    })
}
