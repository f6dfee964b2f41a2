//! The analytic wavelet `ψ_α(x) = (x + i)^{−α−1}` and the transform
//! `W g(a, b) = a^α ∫ g(t) (t − b − ia)^{−α−1} dt`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modcoeffs::CoefficientSequence;
use crate::quadrature::{tanh_sinh, GaussLegendre};
use crate::series::{eval_halfplane, unit};

pub fn wavelet_psi(alpha: f64, x: f64) -> Complex64 {
    Complex64::new(x, 1.0).powf(-alpha - 1.0)
}

const GL_ORDER: usize = 16;
const TAIL_TERMS: usize = 16;

/// `W g(a, b)` for the trigonometric polynomial `g(t) = Σ c e(λt)` given as
/// `(λ, c)` pairs, by composite Gauss–Legendre on `[b − L, b + L]` plus
/// integration by parts on both tails.
pub fn wavelet_transform_quadrature(modes: &[(f64, Complex64)], alpha: f64, a: f64, b: f64) -> Result<Complex64> {
    if !(a > 0.0) || !(alpha > 0.0) {
        return Err(Error::Domain(format!("wavelet transform needs a > 0 and α > 0, got a = {a}, α = {alpha}")));
    }
    if modes.is_empty() {
        return Ok(Complex64::default());
    }
    let lambda_max = modes.iter().map(|(l, _)| l.abs()).fold(0.0, f64::max);
    let half_width = 8.0 + 8.0 * a;
    let cap = if lambda_max > 0.0 { 0.25 / lambda_max } else { f64::INFINITY };
    let edges = graded_edges(b, half_width, a, cap);

    let w = Complex64::new(b, a);
    let exponent = -alpha - 1.0;
    let kernel = |t: f64| (Complex64::new(t, 0.0) - w).powf(exponent);
    let g = |t: f64| -> Complex64 { modes.iter().map(|&(l, c)| c * unit(l * t)).sum() };
    let rule = GaussLegendre::new(GL_ORDER);
    let mut total = rule.integrate_panels(&edges, |t| g(t) * kernel(t));

    let (lo, hi) = (b - half_width, b + half_width);
    for &(l, c) in modes {
        if l == 0.0 {
            // ∫ (t − w)^{−α−1} = (t − w)^{−α} / (−α)
            let prim = |t: f64| (Complex64::new(t, 0.0) - w).powf(-alpha) / (-alpha);
            total += c * (prim(lo) - prim(hi));
            continue;
        }
        // ∫_{−∞}^{lo} = Σ_j (−1)^j G_{j+1}(lo) K^{(j)}(lo), ∫_{hi}^{∞} = −Σ_j (−1)^j G_{j+1}(hi) K^{(j)}(hi)
        let step = Complex64::new(0.0, 2.0 * PI * l);
        let mut falling = Complex64::new(1.0, 0.0);
        let mut g_lo = c * unit(l * lo) / step;
        let mut g_hi = c * unit(l * hi) / step;
        let mut sign = 1.0;
        for j in 0..TAIL_TERMS {
            let p = exponent - j as f64;
            let k_lo = falling * (Complex64::new(lo, 0.0) - w).powf(p);
            let k_hi = falling * (Complex64::new(hi, 0.0) - w).powf(p);
            total += (g_lo * k_lo - g_hi * k_hi) * sign;
            falling *= p;
            g_lo /= step;
            g_hi /= step;
            sign = -sign;
        }
    }
    let value = total * a.powf(alpha);
    if !value.is_finite() {
        return Err(Error::Numerical("wavelet quadrature produced a non-finite value".into()));
    }
    Ok(value)
}

/// Panel edges on `[b − L, b + L]`: width `min(cap, max(a, |t − b|)/4)`.
fn graded_edges(b: f64, half_width: f64, a: f64, cap: f64) -> Vec<f64> {
    let mut right = vec![0.0];
    let mut d = 0.0;
    while d < half_width {
        let width = cap.min(0.25 * a.max(d));
        d = (d + width).min(half_width);
        right.push(d);
    }
    let mut edges: Vec<f64> = right.iter().rev().map(|d| b - d).collect();
    edges.extend(right.iter().skip(1).map(|d| b + d));
    edges
}

fn constant_cache() -> &'static Mutex<HashMap<u64, Complex64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Complex64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `C_α` with `W e(λ·)(a, b) = C_α λ^α a^α e(λ(b + ia))` for `λ > 0`, from
/// one quadrature at `(a, b) = (1, 0)`; cached per `α`.
pub fn wavelet_constant(alpha: f64) -> Result<Complex64> {
    if !(alpha > 0.5) || !alpha.is_finite() {
        return Err(Error::Domain(format!("wavelet constant needs α > 1/2, got {alpha}")));
    }
    if let Some(c) = constant_cache().lock().expect("cache lock").get(&alpha.to_bits()) {
        return Ok(*c);
    }
    let w = wavelet_transform_quadrature(&[(1.0, Complex64::new(1.0, 0.0))], alpha, 1.0, 0.0)?;
    let c = w * (2.0 * PI).exp();
    constant_cache().lock().expect("cache lock").insert(alpha.to_bits(), c);
    Ok(c)
}

/// Closed form `W f_α(a, b) = C_α a^α (f(b + ia) − a_0)`.
pub fn wavelet_transform_series(coeffs: &CoefficientSequence, alpha: f64, a: f64, b: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("wavelet scale must be positive, got {a}")));
    }
    let c = wavelet_constant(alpha)?;
    Ok(c * a.powf(alpha) * (eval_halfplane(coeffs, b, a, None)? - coeffs.a0))
}

/// `W g(a, b)` for a real function on ℝ of at most polynomial growth `< α`,
/// via `t = b + a·tan θ` and tanh-sinh on `(−π/2, π/2)`. A known kink of `g`
/// (e.g. a cusp) is used as a split point.
pub fn wavelet_transform_function<F>(g: F, alpha: f64, a: f64, b: f64, kink: Option<f64>) -> Result<Complex64>
where
    F: Fn(f64) -> f64,
{
    if !(a > 0.0) {
        return Err(Error::Domain(format!("wavelet scale must be positive, got {a}")));
    }
    let exponent = -alpha - 1.0;
    let integrand = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let u = s / c;
        Complex64::new(g(b + a * u), 0.0) * Complex64::new(u, -1.0).powf(exponent) / (c * c)
    };
    let half = 0.5 * PI;
    let mut splits = vec![-half];
    if let Some(k) = kink {
        splits.push(((k - b) / a).atan());
    }
    splits.push(half);
    let mut total = Complex64::default();
    for w in splits.windows(2) {
        if w[1] > w[0] {
            total += tanh_sinh(w[0], w[1], 1e-11, integrand)?.value;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcoeffs::theta12_sequence;
    use statrs::function::gamma::gamma;

    fn closed_constant(alpha: f64) -> Complex64 {
        Complex64::from_polar(1.0, PI * (alpha + 1.0) / 2.0) * (2.0 * PI).powf(alpha + 1.0) / gamma(alpha + 1.0)
    }

    #[test]
    fn psi_values() {
        assert!((wavelet_psi(1.0, 0.0) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let z = Complex64::new(1.0, 1.0);
        assert!((wavelet_psi(2.0, 1.0) - 1.0 / (z * z * z)).norm() < 1e-15);
        for (alpha, x) in [(0.7, 3.0), (2.5, -1.2)] {
            let m = (x * x + 1.0f64).powf(-(alpha + 1.0) / 2.0);
            assert!((wavelet_psi(alpha, x).norm() - m).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_matches_gamma_closed_form() {
        for alpha in [0.75, 1.0, 1.75, 3.25, 5.0] {
            let c = wavelet_constant(alpha).unwrap();
            let exact = closed_constant(alpha);
            assert!((c - exact).norm() < 1e-9 * exact.norm(), "α={alpha}: {c} vs {exact}");
        }
        assert!(wavelet_constant(0.5).is_err());
    }

    #[test]
    fn negative_frequencies_vanish() {
        for l in [0.0, -1.0, -3.0] {
            let w = wavelet_transform_quadrature(&[(l, Complex64::new(1.0, 0.0))], 1.5, 0.2, 0.1).unwrap();
            assert!(w.norm() < 1e-8, "λ={l}: {w}");
        }
    }

    #[test]
    fn closed_form_matches_quadrature_for_theta12() {
        let alpha = 1.0;
        let seq = theta12_sequence(400).unwrap();
        let modes: Vec<(f64, Complex64)> = seq
            .terms()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(i, c)| ((i + 1) as f64, c / ((i + 1) as f64).powf(alpha)))
            .collect();
        let (a, b) = (0.1, 0.3);
        let quad = wavelet_transform_quadrature(&modes, alpha, a, b).unwrap();
        let closed = wavelet_transform_series(&seq, alpha, a, b).unwrap();
        assert!((quad - closed).norm() < 1e-5 * closed.norm(), "{quad} vs {closed}");
    }

    #[test]
    fn power_cusp_transform_scales() {
        let g = |t: f64| t.abs().sqrt();
        let w1 = wavelet_transform_function(g, 2.0, 1e-2, 0.0, Some(0.0)).unwrap();
        let w2 = wavelet_transform_function(g, 2.0, 1e-4, 0.0, Some(0.0)).unwrap();
        assert!(((w1 / w2).norm() - 10.0).abs() < 1e-6);
    }
}
