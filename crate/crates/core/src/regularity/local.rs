//! Moduli of continuity on a neighbourhood, for the local exponent `β**`.

use super::{fit_slope, ExponentEstimate, ScaleRange, ScaleScan, ScanKind};
use crate::error::{Error, Result};
use crate::series::Signal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalParams {
    /// Half-width of the interval around `x₀`.
    pub radius: f64,
    /// Separations `d_j = 2^{−j}`.
    pub scales: ScaleRange,
    /// Pairs are sampled at separations `d_j·ℓ/lags`, `ℓ = 1..lags`.
    pub lags: usize,
}

impl Default for LocalParams {
    fn default() -> Self {
        Self { radius: 0.25, scales: ScaleRange { start: 8, end: 20 }, lags: 8 }
    }
}

/// For each separation `d_j`, `log₂ sup |f^{(k)}(x) − f^{(k)}(y)|` over sampled
/// pairs `x, y ∈ (x₀ − radius, x₀ + radius)` with `|x − y| ≤ d_j`. The slope of
/// the modulus of continuity estimates `min(1, β**(x₀) − k)`.
pub fn local_pair_scan<S: Signal + ?Sized>(signal: &S, k: u32, x0: f64, params: &LocalParams) -> Result<ScaleScan> {
    signal.check_derivative(k)?;
    if !(params.radius > 0.0) || params.lags == 0 {
        return Err(Error::Input("local scan needs a positive radius and lag count".into()));
    }
    let finest = (-(params.scales.end as f64)).exp2();
    let step = finest / params.lags as f64;
    let count = (2.0 * params.radius / step).floor() as usize + 1;
    if count > 1 << 26 {
        return Err(Error::Resource(format!("local scan would need {count} samples")));
    }
    let values = signal.sample(k, x0 - params.radius, step, count)?;
    let magnitude = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = 8.0 * f64::EPSILON * magnitude;

    let mut scan = ScaleScan::new(ScanKind::LocalPair)
        .param("x0", x0)
        .param("k", k)
        .param("radius", params.radius)
        .param("lags", params.lags)
        .param("scales", params.scales);
    for j in params.scales.iter() {
        let stride = 1usize << (params.scales.end - j);
        let mut omega = 0.0f64;
        let mut i = 0;
        while i + stride < count {
            for lag in 1..=params.lags {
                let t = i + lag * stride;
                if t >= count {
                    break;
                }
                omega = omega.max((values[t] - values[i]).norm());
            }
            i += stride;
        }
        if omega > floor {
            scan.push(j, -j as f64, omega);
        } else {
            scan.push_sentinel(j, -j as f64);
        }
    }
    scan.finish()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalEstimate {
    /// `k + min(1, s_k)`.
    pub value: f64,
    pub order: u32,
    pub slopes: Vec<f64>,
    pub last_fit: ExponentEstimate,
}

/// Estimate of `β**(x₀)`: climb the derivatives while the local modulus of
/// continuity of `f^{(k)}` is Lipschitz (slope ≥ 0.9) and `f^{(k+1)}` exists.
pub fn estimate_beta_starstar<S: Signal + ?Sized>(
    signal: &S,
    x0: f64,
    params: &LocalParams,
    window: ScaleRange,
    max_order: u32,
) -> Result<LocalEstimate> {
    let mut slopes = Vec::new();
    let mut k = 0;
    loop {
        let fit = fit_slope(&local_pair_scan(signal, k, x0, params)?, window)?;
        slopes.push(fit.slope);
        let climb = fit.slope >= 0.9 && k < max_order && signal.check_derivative(k + 1).is_ok();
        if !climb {
            return Ok(LocalEstimate { value: k as f64 + fit.slope.min(1.0), order: k, slopes, last_fit: fit });
        }
        k += 1;
    }
}
