use serde::Serialize;

use super::{ScaleRange, ScaleScan};
use crate::error::{Error, Result};

/// Ordinary least squares `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope from the residuals (0 for two points).
    pub stderr: f64,
    pub r_squared: f64,
    pub n: usize,
}

pub fn fit_linear(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    let n = xs.len();
    if n != ys.len() {
        return Err(Error::Fit("x and y lengths differ".into()));
    }
    if n < 2 {
        return Err(Error::Fit(format!("{n} points cannot determine a line")));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Fit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    let stderr = if n > 2 { (ssr / (nf - 2.0) / sxx).sqrt() } else { 0.0 };
    let r_squared = if syy > 0.0 { (1.0 - ssr / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok(LinearFit { slope, intercept, stderr, r_squared, n })
}

/// Decay exponent of a scan: the OLS slope of `log2_modulus` against
/// `log2_scale` (positive when the modulus shrinks at fine scales).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentEstimate {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub r_squared: f64,
    pub fit_range: (i32, i32),
    pub n_points: usize,
}

pub fn fit_slope(scan: &ScaleScan, window: ScaleRange) -> Result<ExponentEstimate> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = scan
        .points
        .iter()
        .filter(|p| window.contains(p.j))
        .filter_map(|p| p.log2_modulus.map(|m| (p.log2_scale, m)))
        .unzip();
    if xs.len() < 4 {
        return Err(Error::Fit(format!(
            "{} usable points in window {window}, need at least 4",
            xs.len()
        )));
    }
    let fit = fit_linear(&xs, &ys)?;
    let js = scan.points.iter().filter(|p| window.contains(p.j) && p.log2_modulus.is_some());
    let (lo, hi) = js.fold((i32::MAX, i32::MIN), |(lo, hi), p| (lo.min(p.j), hi.max(p.j)));
    Ok(ExponentEstimate {
        slope: fit.slope,
        intercept: fit.intercept,
        stderr: fit.stderr,
        r_squared: fit.r_squared,
        fit_range: (lo, hi),
        n_points: fit.n,
    })
}
