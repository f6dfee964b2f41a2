//! Cone and leader scans of the wavelet modulus.

use rayon::prelude::*;

use super::{wavelet_constant, wavelet_transform_function, ScaleRange, ScaleScan, ScanKind};
use crate::error::{Error, Result};
use crate::modcoeffs::CoefficientSequence;
use crate::series::{eval_halfplane, halfplane_grid_fft};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeParams {
    /// Cone half-width `K` in units of the scale.
    pub width: f64,
    /// Number of positions swept across `|b − x₀| ≤ K·y`.
    pub sweep: usize,
    pub scales: ScaleRange,
}

impl Default for ConeParams {
    fn default() -> Self {
        Self { width: 4.0, sweep: 257, scales: ScaleRange { start: 6, end: 16 } }
    }
}

fn sweep_offsets(params: &ConeParams) -> Result<Vec<f64>> {
    if !(params.width >= 0.0) {
        return Err(Error::Input(format!("cone width must be nonnegative, got {}", params.width)));
    }
    if params.sweep == 0 {
        return Err(Error::Input("cone sweep needs at least one position".into()));
    }
    if params.sweep == 1 || params.width == 0.0 {
        return Ok(vec![0.0]);
    }
    let last = (params.sweep - 1) as f64;
    Ok((0..params.sweep).map(|i| params.width * (2.0 * i as f64 / last - 1.0)).collect())
}

/// `log₂ sup_{|b−x₀| ≤ K·2^{−j}} |W f_α(2^{−j}, b)|` for each `j`; the slope
/// estimates the pointwise exponent `β(x₀)` (for `β < α`).
pub fn cone_scan(coeffs: &CoefficientSequence, alpha: f64, x0: f64, params: &ConeParams) -> Result<ScaleScan> {
    let c = wavelet_constant(alpha)?.norm();
    let offsets = sweep_offsets(params)?;
    let jobs: Vec<(i32, f64)> =
        params.scales.iter().flat_map(|j| offsets.iter().map(move |&o| (j, o))).collect();
    let values: Vec<f64> = jobs
        .par_iter()
        .map(|&(j, o)| {
            let y = (-j as f64).exp2();
            eval_halfplane(coeffs, x0 + o * y, y, None).map(|f| (f - coeffs.a0).norm())
        })
        .collect::<Result<_>>()?;
    let mut scan = ScaleScan::new(ScanKind::Cone)
        .param("x0", x0)
        .param("alpha", alpha)
        .param("K", params.width)
        .param("sweep", params.sweep)
        .param("scales", params.scales);
    for (j, chunk) in params.scales.iter().zip(values.chunks(offsets.len())) {
        let y = (-j as f64).exp2();
        let sup = chunk.iter().copied().fold(0.0, f64::max);
        scan.push(j, -j as f64, c * y.powf(alpha) * sup);
    }
    scan.finish()
}

/// Cone scan of a real function on ℝ by direct wavelet quadrature.
pub fn fixture_cone_scan<F>(
    g: F,
    kink: Option<f64>,
    alpha: f64,
    x0: f64,
    params: &ConeParams,
) -> Result<ScaleScan>
where
    F: Fn(f64) -> f64 + Sync,
{
    let offsets = sweep_offsets(params)?;
    let mut scan = ScaleScan::new(ScanKind::Cone)
        .param("x0", x0)
        .param("alpha", alpha)
        .param("K", params.width)
        .param("sweep", params.sweep)
        .param("scales", params.scales);
    for j in params.scales.iter() {
        let y = (-j as f64).exp2();
        let sup = offsets
            .par_iter()
            .map(|&o| wavelet_transform_function(&g, alpha, y, x0 + o * y, kink).map(|w| w.norm()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        scan.push(j, -j as f64, sup);
    }
    scan.finish()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeaderParams {
    /// Octaves `j` recorded.
    pub scales: ScaleRange,
    /// Finest scale index included in every supremum.
    pub finest: i32,
    /// Sub-scales per octave.
    pub per_octave: u32,
    /// FFT grid size over one period.
    pub grid: usize,
}

impl Default for LeaderParams {
    fn default() -> Self {
        Self { scales: ScaleRange { start: 4, end: 8 }, finest: 16, per_octave: 4, grid: 1 << 20 }
    }
}

/// `log₂ sup {|W f_α(y, x)| : |x − x₀| ≤ 2^{−j}, 2^{−finest} ≤ y ≤ 2^{−j}}`.
///
/// At rational points of a cusp form the cone supremum only sees the
/// exponential decay of `f` along the vertical; the box supremum also picks
/// up the nearby maxima, which carry the pointwise exponent.
pub fn leader_scan(coeffs: &CoefficientSequence, alpha: f64, x0: f64, params: &LeaderParams) -> Result<ScaleScan> {
    if params.finest < params.scales.end || params.per_octave == 0 || params.grid < 4 {
        return Err(Error::Input("leader scan: finest scale must cover the range, grid ≥ 4".into()));
    }
    let c = wavelet_constant(alpha)?.norm();
    let m = params.grid;
    let octaves: Vec<i32> = params.scales.iter().collect();
    let mut leaders = vec![0.0f64; octaves.len()];
    let sub = params.per_octave as i32;
    let x_start = x0 - 0.5;
    let centre = m / 2;
    for i in params.scales.start * sub..=params.finest * sub {
        let s = i as f64 / sub as f64;
        let y = (-s).exp2();
        let grid = halfplane_grid_fft(coeffs, x_start, y, m, None)?;
        let factor = c * y.powf(alpha);
        for (leader, &j) in leaders.iter_mut().zip(&octaves) {
            if (j as f64) > s {
                continue;
            }
            let half = (((-j as f64).exp2() * m as f64).floor() as usize).min(centre - 1);
            let window = &grid[centre - half..=centre + half];
            let sup = window.iter().map(|f| (f - coeffs.a0).norm()).fold(0.0, f64::max);
            *leader = leader.max(factor * sup);
        }
    }
    let mut scan = ScaleScan::new(ScanKind::Leader)
        .param("x0", x0)
        .param("alpha", alpha)
        .param("finest", params.finest)
        .param("per_octave", params.per_octave)
        .param("grid", m)
        .param("scales", params.scales);
    for (&j, &l) in octaves.iter().zip(&leaders) {
        scan.push(j, -j as f64, l);
    }
    scan.finish()
}
