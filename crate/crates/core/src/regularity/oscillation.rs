//! Finite-difference oscillation scans for `β` and the restricted exponent `β*`.

use num_complex::Complex64;

use super::{fit_slope, ExponentEstimate, ScaleRange, ScaleScan, ScanKind};
use crate::error::{Error, Result};
use crate::series::Signal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationParams {
    /// Difference order `m`.
    pub order: u32,
    /// Derivative of the signal that is differenced.
    pub derivative: u32,
    pub scales: ScaleRange,
    /// Step sizes per octave in the sub-sweep.
    pub sub_sweep: usize,
}

impl OscillationParams {
    pub fn new(order: u32, scales: ScaleRange) -> Self {
        Self { order, derivative: 0, scales, sub_sweep: 16 }
    }
}

fn binomial(m: u32, i: u32) -> f64 {
    (0..i).fold(1.0, |acc, t| acc * (m - t) as f64 / (t + 1) as f64)
}

/// `|Δ_h^m g(x₀)|`, or `None` when it sits below the rounding floor of the
/// samples it combines.
fn difference<S: Signal + ?Sized>(signal: &S, k: u32, m: u32, x0: f64, h: f64) -> Result<Option<f64>> {
    let mut sum = Complex64::default();
    let mut scale = 0.0f64;
    for i in 0..=m {
        let v = signal.derivative(k, x0 + i as f64 * h)?;
        let sign = if (m - i) % 2 == 0 { 1.0 } else { -1.0 };
        sum += v * (sign * binomial(m, i));
        scale = scale.max(v.norm());
    }
    let floor = 4.0 * 2f64.powi(m as i32) * f64::EPSILON * scale;
    let d = sum.norm();
    Ok((d > floor).then_some(d))
}

/// For each octave `j`, `log₂ sup_{0 < |h| ≤ 2^{−j}} |Δ_h^m f^{(k)}(x₀)|`
/// (the supremum runs over the computed octaves `≥ j`). The slope estimates
/// `min(β(x₀) − k, m)`.
pub fn oscillation_scan<S: Signal + ?Sized>(signal: &S, x0: f64, params: &OscillationParams) -> Result<ScaleScan> {
    if params.order == 0 || params.sub_sweep == 0 {
        return Err(Error::Input("difference order and sub-sweep must be positive".into()));
    }
    signal.check_derivative(params.derivative)?;
    let mut octave_max: Vec<Option<f64>> = Vec::new();
    for j in params.scales.iter() {
        let mut best: Option<f64> = None;
        for t in 0..params.sub_sweep {
            let h = (-(j as f64) - t as f64 / params.sub_sweep as f64).exp2();
            for step in [h, -h] {
                if let Some(d) = difference(signal, params.derivative, params.order, x0, step)? {
                    best = Some(best.map_or(d, |b: f64| b.max(d)));
                }
            }
        }
        octave_max.push(best);
    }
    // running supremum from the finest octave outward
    let mut running: Option<f64> = None;
    for v in octave_max.iter_mut().rev() {
        running = match (running, *v) {
            (Some(r), Some(d)) => Some(r.max(d)),
            (r, d) => r.or(d),
        };
        *v = running;
    }
    let mut scan = ScaleScan::new(ScanKind::Oscillation)
        .param("x0", x0)
        .param("m", params.order)
        .param("k", params.derivative)
        .param("scales", params.scales);
    for (j, v) in params.scales.iter().zip(octave_max) {
        match v {
            Some(d) => scan.push(j, -j as f64, d),
            None => scan.push_sentinel(j, -j as f64),
        }
    }
    scan.finish()
}

/// Oscillation estimate of `β(x₀)` with the difference order chosen
/// adaptively: `m` grows until the slope stops increasing by more than 0.1
/// (or starts at `⌊predicted⌋ + 1` when a prediction is given).
pub fn estimate_beta_oscillation<S: Signal + ?Sized>(
    signal: &S,
    x0: f64,
    scales: ScaleRange,
    window: ScaleRange,
    predicted: Option<f64>,
) -> Result<(u32, ExponentEstimate)> {
    if let Some(beta) = predicted.filter(|b| b.is_finite() && *b >= 0.0) {
        let m = beta.floor() as u32 + 1;
        let scan = oscillation_scan(signal, x0, &OscillationParams::new(m, scales))?;
        return Ok((m, fit_slope(&scan, window)?));
    }
    let mut previous: Option<(u32, ExponentEstimate)> = None;
    for m in 1..=8 {
        let scan = oscillation_scan(signal, x0, &OscillationParams::new(m, scales))?;
        let est = fit_slope(&scan, window)?;
        if let Some((pm, pe)) = previous {
            if est.slope <= pe.slope + 0.1 {
                return Ok(if est.slope > pe.slope { (m, est) } else { (pm, pe) });
            }
        }
        previous = Some((m, est));
    }
    previous.ok_or_else(|| Error::Fit("no difference order produced a fit".into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedEstimate {
    /// `k + min(1, s_k)`.
    pub value: f64,
    /// Highest derivative order examined.
    pub order: u32,
    /// First-difference slopes `s_0, …, s_k` (`∞` when the differences vanish).
    pub slopes: Vec<f64>,
}

/// Estimate of `β*(x₀)`: walk up the derivatives while `f^{(k)}` is Lipschitz
/// at `x₀` (slope ≥ 0.9) and `f^{(k+1)}` exists near `x₀`.
pub fn estimate_beta_star<S: Signal + ?Sized>(
    signal: &S,
    x0: f64,
    scales: ScaleRange,
    window: ScaleRange,
) -> Result<RestrictedEstimate> {
    let mut slopes = Vec::new();
    for k in 0..=8u32 {
        let params = OscillationParams { derivative: k, ..OscillationParams::new(1, scales) };
        let s = match oscillation_scan(signal, x0, &params) {
            Ok(scan) => fit_slope(&scan, window)?.slope,
            Err(Error::DegenerateScan(_)) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        slopes.push(s);
        if s < 0.9 || signal.check_derivative(k + 1).is_err() {
            return Ok(RestrictedEstimate { value: k as f64 + s.min(1.0), order: k, slopes });
        }
    }
    let k = slopes.len() as u32 - 1;
    Ok(RestrictedEstimate { value: k as f64 + 1.0, order: k, slopes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Fixture;

    struct Linear;

    impl Signal for Linear {
        fn derivative(&self, k: u32, x: f64) -> Result<Complex64> {
            Ok(Complex64::new(if k == 0 { 2.0 * x + 1.0 } else { 2.0 }, 0.0))
        }
        fn check_derivative(&self, _k: u32) -> Result<()> {
            Ok(())
        }
    }

    fn scales() -> ScaleRange {
        ScaleRange::new(4, 16).unwrap()
    }

    #[test]
    fn linear_second_difference_is_degenerate() {
        let r = oscillation_scan(&Linear, 0.3, &OscillationParams::new(2, scales()));
        assert!(matches!(r, Err(Error::DegenerateScan(_))));
    }

    #[test]
    fn power_cusp_first_difference() {
        let f = Fixture::power_cusp(0.5, 0.1).unwrap();
        let scan = oscillation_scan(&f, 0.1, &OscillationParams::new(1, scales())).unwrap();
        let est = fit_slope(&scan, scales()).unwrap();
        assert!((est.slope - 0.5).abs() < 0.05, "{}", est.slope);
    }

    #[test]
    fn chirp_adaptive_order() {
        let (m, est) = estimate_beta_oscillation(&Fixture::Chirp4, 0.0, scales(), scales(), None).unwrap();
        assert!((est.slope - 4.0).abs() < 0.3, "m={m} slope={}", est.slope);
        let scan = oscillation_scan(&Fixture::Chirp4, 0.0, &OscillationParams::new(5, scales())).unwrap();
        let fifth = fit_slope(&scan, scales()).unwrap();
        assert!((fifth.slope - 4.0).abs() < 0.3, "{}", fifth.slope);
    }

    #[test]
    fn restricted_exponents_of_fixtures() {
        let chirp = estimate_beta_star(&Fixture::Chirp4, 0.0, scales(), scales()).unwrap();
        assert!((chirp.value - 2.0).abs() < 0.2, "{chirp:?}");
        let fine = ScaleRange::new(6, 16).unwrap();
        let extreme = estimate_beta_star(&Fixture::ExtremeChirp, 0.0, fine, fine).unwrap();
        assert_eq!(extreme.value, 1.0);
        let cusp = estimate_beta_star(&Fixture::power_cusp(0.5, 0.0).unwrap(), 0.0, scales(), scales()).unwrap();
        assert!((cusp.value - 0.5).abs() < 0.05);
    }

    #[test]
    fn extreme_chirp_differences_vanish() {
        let r = oscillation_scan(&Fixture::ExtremeChirp, 0.0, &OscillationParams::new(1, ScaleRange::new(6, 16).unwrap()));
        assert!(matches!(r, Err(Error::DegenerateScan(_))));
    }
}
