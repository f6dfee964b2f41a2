//! Growth of partial sums `Σ_{n≤N} a_n e(nx)` and of `Σ_{n≤N} |a_n|²`.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{fit_slope, ExponentEstimate, ScaleRange, ScaleScan, ScanKind};
use crate::error::{Error, Result};
use crate::modcoeffs::CoefficientSequence;

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    pub scan: ScaleScan,
    pub fit: ExponentEstimate,
    /// `−slope`: the fitted growth exponent of `max_x |S_N(x)|` in `N`.
    pub gamma_hat: f64,
}

/// `log₂ max_x |Σ_{0≤n≤N} a_n e(nx)|` for dyadic `N`, the maximum taken over
/// a grid of `oversample·N` points (rounded up to a power of two).
pub fn partial_sum_growth(coeffs: &CoefficientSequence, n_list: &[usize], oversample: usize) -> Result<GrowthEstimate> {
    if n_list.len() < 4 {
        return Err(Error::Input("partial-sum scan needs at least 4 values of N".into()));
    }
    if oversample < 2 {
        return Err(Error::Input("oversampling factor must be at least 2".into()));
    }
    let mut sorted = n_list.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut planner = FftPlanner::new();
    let mut scan = ScaleScan::new(ScanKind::PartialSum).param("oversample", oversample);
    for &n in &sorted {
        if !n.is_power_of_two() {
            return Err(Error::Input(format!("N = {n} is not a power of two")));
        }
        if n > coeffs.len() {
            return Err(Error::Resource(format!("N = {n} exceeds the {} materialized terms", coeffs.len())));
        }
        let m = (oversample * n).next_power_of_two();
        let mut buffer = vec![Complex64::default(); m];
        buffer[0] = coeffs.a0;
        buffer[1..=n].copy_from_slice(&coeffs.terms()[..n]);
        planner.plan_fft_inverse(m).process(&mut buffer);
        let peak = buffer.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let j = n.trailing_zeros() as i32;
        scan.push(j, -j as f64, peak);
    }
    let scan = scan.finish()?;
    let window = ScaleRange::new(scan.points[0].j, scan.points[scan.points.len() - 1].j)?;
    let fit = fit_slope(&scan, window)?;
    Ok(GrowthEstimate { gamma_hat: -fit.slope, scan, fit })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyBand {
    /// `(N, Σ_{k≤N}|a_k|² / N^r)`.
    pub ratios: Vec<(usize, f64)>,
    pub min: f64,
    pub max: f64,
}

impl EnergyBand {
    /// `max / min` (infinite when some ratio vanishes).
    pub fn spread(&self) -> f64 {
        if self.min > 0.0 {
            self.max / self.min
        } else {
            f64::INFINITY
        }
    }
}

pub fn l2_energy_check(coeffs: &CoefficientSequence, r: f64, n_list: &[usize]) -> Result<EnergyBand> {
    if !coeffs.is_cusp_form {
        return Err(Error::Inapplicable(format!("{} is not a cusp form", coeffs.name)));
    }
    if n_list.is_empty() {
        return Err(Error::EmptyDomain("no values of N".into()));
    }
    let mut ratios = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n == 0 || n > coeffs.len() {
            return Err(Error::Resource(format!("N = {n} outside 1..={}", coeffs.len())));
        }
        let energy: f64 = coeffs.terms()[..n].iter().map(|a| a.norm_sqr()).sum();
        ratios.push((n, energy / (n as f64).powf(r)));
    }
    let min = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let max = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(EnergyBand { ratios, min, max })
}
