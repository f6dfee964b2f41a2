//! Evaluation of fractional integrals `f_α(x) = Σ a_n n^{−α} e(nx)`.

mod fixtures;
mod halfplane;

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::modcoeffs::{rational_to_f64, CoefficientSequence};

pub use fixtures::{fixture_exponents, ExponentTriple, Fixture};
pub use halfplane::{auto_halfplane_terms, eval_halfplane, halfplane_grid_fft, halfplane_tail, poisson_kernel};

/// Which trigonometric system the series is summed against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `Σ a_n n^{−α} e(nx)`.
    Complex,
    /// `Σ a_n n^{−α} cos(2πnx)`.
    Cosine,
    /// `Σ a_n n^{−α} sin(2πnx)`.
    Sine,
}

impl Flavor {
    fn project(self, z: Complex64) -> Complex64 {
        match self {
            Flavor::Complex => z,
            Flavor::Cosine => Complex64::new(z.re, 0.0),
            Flavor::Sine => Complex64::new(z.im, 0.0),
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(Flavor::Complex),
            "cosine" | "cos" => Ok(Flavor::Cosine),
            "sine" | "sin" => Ok(Flavor::Sine),
            _ => Err(Error::Input(format!("unknown flavor `{s}`"))),
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::Complex => "complex",
            Flavor::Cosine => "cosine",
            Flavor::Sine => "sine",
        })
    }
}

/// A fractional integral of a coefficient sequence, optionally differentiated
/// `k` times (weights `a_n n^{−α} (2πin)^k`).
#[derive(Debug, Clone)]
pub struct SeriesSpec {
    coeffs: Arc<CoefficientSequence>,
    alpha: f64,
    flavor: Flavor,
    derivative: u32,
    /// `weights[n - 1]`.
    weights: Arc<Vec<Complex64>>,
    /// Indices of the nonzero weights when fewer than one in eight is nonzero.
    support: Arc<Option<Vec<u32>>>,
    tail_constant: Arc<OnceLock<f64>>,
}

fn sparse_support(weights: &[Complex64]) -> Option<Vec<u32>> {
    let nonzero = weights.iter().filter(|w| **w != Complex64::default()).count();
    (nonzero * 8 < weights.len()).then(|| {
        (0..weights.len() as u32).filter(|&i| weights[i as usize] != Complex64::default()).collect()
    })
}

impl SeriesSpec {
    pub fn new(coeffs: Arc<CoefficientSequence>, alpha: f64, flavor: Flavor) -> Result<Self> {
        let gamma = coeffs.gamma_f64();
        if !(alpha.is_finite() && alpha > gamma) {
            return Err(Error::Input(format!(
                "{}: α = {alpha} must exceed the growth exponent {gamma}",
                coeffs.name
            )));
        }
        if flavor != Flavor::Complex && !coeffs.is_real() {
            return Err(Error::Input(format!("{}: {flavor} flavor needs real coefficients", coeffs.name)));
        }
        let weights = coeffs
            .terms()
            .iter()
            .enumerate()
            .map(|(i, a)| a * ((i + 1) as f64).powf(-alpha))
            .collect::<Vec<_>>();
        Ok(Self {
            coeffs,
            alpha,
            flavor,
            derivative: 0,
            support: Arc::new(sparse_support(&weights)),
            weights: Arc::new(weights),
            tail_constant: Arc::new(OnceLock::new()),
        })
    }

    /// The `k`-th derivative in `x`. Needs `α − k > γ` so that the
    /// differentiated series still converges.
    pub fn derivative(&self, k: u32) -> Result<Self> {
        let total = self.derivative + k;
        let gamma = self.coeffs.gamma_f64();
        if self.alpha - total as f64 <= gamma {
            return Err(Error::DerivativeUnavailable {
                order: total,
                reason: format!("α − k = {} does not exceed γ = {gamma}", self.alpha - total as f64),
            });
        }
        if k == 0 {
            return Ok(self.clone());
        }
        let factor = Complex64::new(0.0, 2.0 * PI);
        let weights = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * (factor * (i + 1) as f64).powu(k))
            .collect();
        Ok(Self {
            coeffs: self.coeffs.clone(),
            alpha: self.alpha,
            flavor: self.flavor,
            derivative: total,
            support: Arc::clone(&self.support),
            weights: Arc::new(weights),
            tail_constant: Arc::new(OnceLock::new()),
        })
    }

    pub fn coeffs(&self) -> &Arc<CoefficientSequence> {
        &self.coeffs
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn derivative_order(&self) -> u32 {
        self.derivative
    }

    /// `a_n n^{−α} (2πin)^k` for `n = 1..=N`.
    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Decay exponent `α − k − γ` of the truncation tail.
    pub fn tail_exponent(&self) -> f64 {
        self.alpha - self.derivative as f64 - self.coeffs.gamma_f64()
    }

    /// True when `α` does not exceed the sequence's convergence threshold, so
    /// the sum is only conditionally convergent.
    pub fn below_threshold(&self) -> bool {
        self.alpha - self.derivative as f64 <= rational_to_f64(self.coeffs.convergence_threshold)
    }

    /// `C_emp` in `tail(N) ≈ C_emp · N^{γ−α}`, calibrated once from N and 2N
    /// partial sums on 64 probe points (with a safety factor 2).
    pub fn tail_constant(&self) -> f64 {
        *self.tail_constant.get_or_init(|| calibrate_tail_constant(self))
    }

    /// Upper estimate of the truncation error after `n` terms.
    pub fn tail_bound(&self, n: usize) -> f64 {
        self.tail_constant() * (n.max(1) as f64).powf(-self.tail_exponent())
    }
}

fn calibrate_tail_constant(spec: &SeriesSpec) -> f64 {
    let len = spec.len();
    let total: f64 = spec.weights.iter().map(|w| w.norm()).sum();
    if len < 2 {
        return total;
    }
    let mut n0 = 1usize;
    while 4 * n0 <= len {
        n0 *= 2;
    }
    let probes: Vec<f64> = (0..64).map(|i| i as f64 / 64.0).collect();
    let diff = probes
        .par_iter()
        .map(|&x| (eval_point_raw(spec, x, 2 * n0) - eval_point_raw(spec, x, n0)).norm())
        .reduce(|| 0.0, f64::max);
    let e = spec.tail_exponent();
    let c = 2.0 * diff / ((n0 as f64).powf(-e) * (1.0 - 2f64.powf(-e)));
    if c > 0.0 {
        c
    } else {
        total * f64::EPSILON
    }
}

/// Smallest `N` with `C_emp N^{γ−α} ≤ eps`, and the bound itself.
pub fn truncation_length(spec: &SeriesSpec, eps: f64) -> Result<(usize, f64)> {
    if !(eps > 0.0) {
        return Err(Error::Input(format!("tolerance must be positive, got {eps}")));
    }
    let c = spec.tail_constant();
    let e = spec.tail_exponent();
    let needed = (c / eps).powf(1.0 / e).ceil().max(1.0);
    if needed > spec.len() as f64 {
        return Err(Error::Accuracy {
            requested: eps,
            achievable: spec.tail_bound(spec.len()),
            available: spec.len(),
        });
    }
    let n = needed as usize;
    Ok((n, spec.tail_bound(n)))
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn step(sum: f64, carry: &mut f64, x: f64) -> f64 {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            *carry += (sum - t) + x;
        } else {
            *carry += (x - t) + sum;
        }
        t
    }

    pub(crate) fn add(&mut self, z: Complex64) {
        self.sum.re = Self::step(self.sum.re, &mut self.carry.re, z.re);
        self.sum.im = Self::step(self.sum.im, &mut self.carry.im, z.im);
    }

    pub(crate) fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

const RESEED: usize = 64;

/// `e(t)` for the fractional part of `t`.
pub(crate) fn unit(t: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * (t - t.floor())).sin_cos();
    Complex64::new(c, s)
}

/// `Σ_{n≤N} w_n e(nx)` with phases by recurrence, reseeded every 64 terms.
fn eval_point_raw(spec: &SeriesSpec, x: f64, n: usize) -> Complex64 {
    let xr = x - x.floor();
    if let Some(support) = spec.support.as_ref() {
        let mut acc = CompensatedSum::default();
        for &i in support.iter().take_while(|&&i| (i as usize) < n) {
            let k = i as usize + 1;
            acc.add(spec.weights[i as usize] * unit((k as f64 * xr).fract()));
        }
        return acc.total();
    }
    let step = unit(xr);
    let mut phase = step;
    let mut acc = CompensatedSum::default();
    for (i, w) in spec.weights[..n].iter().enumerate() {
        let k = i + 1;
        if k % RESEED == 0 {
            phase = unit((k as f64 * xr).fract());
        }
        acc.add(w * phase);
        phase *= step;
    }
    acc.total()
}

/// Partial sum over `0 < n ≤ N` in the spec's flavor.
pub fn eval_point(spec: &SeriesSpec, x: f64, n: usize) -> Result<Complex64> {
    check_terms(spec, n)?;
    Ok(spec.flavor.project(eval_point_raw(spec, x, n)))
}

fn check_terms(spec: &SeriesSpec, n: usize) -> Result<()> {
    if n == 0 || n > spec.len() {
        return Err(Error::Resource(format!(
            "{} terms requested, {} materialized",
            n,
            spec.len()
        )));
    }
    Ok(())
}

/// Samples of a series on the uniform grid `x_start + j·step`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub x_start: f64,
    pub step: f64,
    pub count: usize,
    pub values: Vec<Complex64>,
    pub truncation_n: usize,
    pub tail_bound: f64,
}

impl SampleGrid {
    pub fn x(&self, j: usize) -> f64 {
        self.x_start + j as f64 * self.step
    }
}

/// Naive O(N·count) evaluation, parallel over samples.
pub fn eval_grid_direct(
    spec: &SeriesSpec,
    x_start: f64,
    step: f64,
    count: usize,
    n: usize,
) -> Result<SampleGrid> {
    check_terms(spec, n)?;
    if count == 0 {
        return Err(Error::EmptyDomain("grid needs at least one sample".into()));
    }
    if !(step > 0.0) {
        return Err(Error::Input(format!("grid step must be positive, got {step}")));
    }
    let values = (0..count)
        .into_par_iter()
        .map(|j| spec.flavor.project(eval_point_raw(spec, x_start + j as f64 * step, n)))
        .collect();
    Ok(SampleGrid { x_start, step, count, values, truncation_n: n, tail_bound: spec.tail_bound(n) })
}

/// All samples at `x_j = j/M` through one inverse DFT. Refuses `M < 2N + 2`.
pub fn eval_grid_fft(spec: &SeriesSpec, m: usize, n: usize) -> Result<SampleGrid> {
    check_terms(spec, n)?;
    if m < 2 * n + 2 {
        return Err(Error::Aliasing { grid: m, terms: n });
    }
    let mut buffer = vec![Complex64::default(); m];
    buffer[1..=n].copy_from_slice(&spec.weights[..n]);
    FftPlanner::new().plan_fft_inverse(m).process(&mut buffer);
    let values = buffer.into_iter().map(|z| spec.flavor.project(z)).collect();
    Ok(SampleGrid {
        x_start: 0.0,
        step: 1.0 / m as f64,
        count: m,
        values,
        truncation_n: n,
        tail_bound: spec.tail_bound(n),
    })
}

/// Samples on an arbitrary uniform grid `x_start + j·step` through a chirp-z
/// (Bluestein) convolution: `n·j = (n² + j² − (j − n)²)/2`.
pub fn eval_grid_chirp(
    spec: &SeriesSpec,
    x_start: f64,
    step: f64,
    count: usize,
    n: usize,
) -> Result<SampleGrid> {
    check_terms(spec, n)?;
    if count == 0 {
        return Err(Error::EmptyDomain("grid needs at least one sample".into()));
    }
    if !(step > 0.0) {
        return Err(Error::Input(format!("grid step must be positive, got {step}")));
    }
    let half = 0.5 * step;
    let chirp = |k: u64| unit((half * (k * k) as f64).fract());
    let len = (n + count + 1).next_power_of_two();
    let x0 = x_start - x_start.floor();
    let mut a = vec![Complex64::default(); len];
    for (i, w) in spec.weights[..n].iter().enumerate() {
        let k = (i + 1) as u64;
        a[i + 1] = w * unit((k as f64 * x0).fract()) * chirp(k);
    }
    let mut b = vec![Complex64::default(); len];
    for m in 0..count.max(n + 1) {
        let c = chirp(m as u64).conj();
        if m < count {
            b[m] = c;
        }
        if m > 0 && m <= n {
            b[len - m] = c;
        }
    }
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(len);
    forward.process(&mut a);
    forward.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    planner.plan_fft_inverse(len).process(&mut a);
    let scale = 1.0 / len as f64;
    let values = (0..count).map(|j| spec.flavor.project(a[j] * scale * chirp(j as u64))).collect();
    Ok(SampleGrid { x_start, step, count, values, truncation_n: n, tail_bound: spec.tail_bound(n) })
}

/// Something that can be sampled, together with its derivatives: the
/// estimators in [`crate::regularity`] accept either a series or a fixture.
pub trait Signal: Sync {
    /// `f^{(k)}(x)`.
    fn derivative(&self, k: u32, x: f64) -> Result<Complex64>;

    fn value(&self, x: f64) -> Result<Complex64> {
        self.derivative(0, x)
    }

    /// Whether `f^{(k)}` exists and is continuous near the point of interest.
    fn check_derivative(&self, k: u32) -> Result<()>;

    /// `f^{(k)}` on `x_start + j·step`, `j < count`.
    fn sample(&self, k: u32, x_start: f64, step: f64, count: usize) -> Result<Vec<Complex64>> {
        (0..count)
            .into_par_iter()
            .map(|j| self.derivative(k, x_start + j as f64 * step))
            .collect()
    }
}

/// A series truncated at a fixed number of terms, as a [`Signal`].
#[derive(Debug, Clone)]
pub struct SeriesSignal {
    spec: SeriesSpec,
    terms: usize,
}

impl SeriesSignal {
    pub fn new(spec: SeriesSpec, terms: usize) -> Result<Self> {
        check_terms(&spec, terms)?;
        Ok(Self { spec, terms })
    }

    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }
}

impl Signal for SeriesSignal {
    fn derivative(&self, k: u32, x: f64) -> Result<Complex64> {
        if k == 0 {
            return eval_point(&self.spec, x, self.terms);
        }
        eval_point(&self.spec.derivative(k)?, x, self.terms)
    }

    fn check_derivative(&self, k: u32) -> Result<()> {
        self.spec.derivative(k).map(|_| ())
    }

    fn sample(&self, k: u32, x_start: f64, step: f64, count: usize) -> Result<Vec<Complex64>> {
        let spec = self.spec.derivative(k)?;
        Ok(eval_grid_direct(&spec, x_start, step, count, self.terms)?.values)
    }
}
