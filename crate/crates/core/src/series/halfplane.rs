//! The holomorphic extension `f(x+iy) = a_0 + Σ a_n e(nx) e^{−2πny}` and the
//! Poisson kernel.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{unit, CompensatedSum};
use crate::error::{Error, Result};
use crate::modcoeffs::CoefficientSequence;

const HALFPLANE_CUTOFF: f64 = 1e-15;

/// Terms needed for `e^{−2πNy}·max|a_n| < 10⁻¹⁵`, capped at the materialized
/// length.
pub fn auto_halfplane_terms(coeffs: &CoefficientSequence, y: f64) -> usize {
    let max = coeffs.max_abs().max(f64::MIN_POSITIVE);
    let needed = ((max.ln() - HALFPLANE_CUTOFF.ln()) / (2.0 * PI * y)).ceil();
    if !(needed >= 1.0) {
        return 1;
    }
    if needed >= coeffs.len() as f64 {
        coeffs.len()
    } else {
        needed as usize
    }
}

/// Bound on `|Σ_{n>N} a_n e(nz)|` from `max|a_n|` (exact for bounded
/// coefficients, a model otherwise).
pub fn halfplane_tail(coeffs: &CoefficientSequence, y: f64, n: usize) -> f64 {
    let q = (-2.0 * PI * y).exp();
    coeffs.max_abs() * q.powf(n as f64 + 1.0) / (1.0 - q)
}

/// `a_0 + Σ_{n≤N} a_n e(n(x+iy))`; `N` defaults to [`auto_halfplane_terms`].
pub fn eval_halfplane(coeffs: &CoefficientSequence, x: f64, y: f64, n: Option<usize>) -> Result<Complex64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("half-plane evaluation needs y > 0, got {y}")));
    }
    let n = n.unwrap_or_else(|| auto_halfplane_terms(coeffs, y)).min(coeffs.len());
    let xr = x - x.floor();
    let damp = (-2.0 * PI * y).exp();
    let step = unit(xr) * damp;
    let mut power = step;
    let mut acc = CompensatedSum::default();
    acc.add(coeffs.a0);
    for (i, a) in coeffs.terms()[..n].iter().enumerate() {
        let k = i + 1;
        if k % 64 == 0 {
            power = unit((k as f64 * xr).fract()) * (-2.0 * PI * y * k as f64).exp();
        }
        acc.add(a * power);
        power *= step;
    }
    Ok(acc.total())
}

/// `f(x_start + j/M + iy)` for `j < M` with one FFT. Indices beyond `M` are
/// folded, which is exact by periodicity in `n`.
pub fn halfplane_grid_fft(
    coeffs: &CoefficientSequence,
    x_start: f64,
    y: f64,
    m: usize,
    n: Option<usize>,
) -> Result<Vec<Complex64>> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("half-plane evaluation needs y > 0, got {y}")));
    }
    if m == 0 {
        return Err(Error::EmptyDomain("grid needs at least one sample".into()));
    }
    let n = n.unwrap_or_else(|| auto_halfplane_terms(coeffs, y)).min(coeffs.len());
    let mut buffer = vec![Complex64::default(); m];
    let shift = x_start - x_start.floor();
    for (i, a) in coeffs.terms()[..n].iter().enumerate() {
        let k = i + 1;
        let damp = (-2.0 * PI * y * k as f64).exp();
        if damp == 0.0 {
            break;
        }
        buffer[k % m] += a * unit((k as f64 * shift).fract()) * damp;
    }
    buffer[0] += coeffs.a0;
    FftPlanner::new().plan_fft_inverse(m).process(&mut buffer);
    Ok(buffer)
}

/// `P_r(t) = (1 − r²) / (1 − 2r cos 2πt + r²)`.
pub fn poisson_kernel(r: f64, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("Poisson kernel needs 0 ≤ r < 1, got {r}")));
    }
    // 1 − 2r cos 2πt + r² = (1 − r)² + 4r sin² πt, without cancellation near t = 0
    let s = (PI * t).sin();
    Ok((1.0 - r * r) / ((1.0 - r) * (1.0 - r) + 4.0 * r * s * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcoeffs::{elliptic14_sequence, jacobi_theta_sequence, theta12_sequence};
    use crate::quadrature::GaussLegendre;

    #[test]
    fn large_y_tends_to_constant_term() {
        let jac = jacobi_theta_sequence(100).unwrap();
        let v = eval_halfplane(&jac, 0.3, 20.0, None).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn jacobi_at_i() {
        let jac = jacobi_theta_sequence(100).unwrap();
        let v = eval_halfplane(&jac, 0.0, 1.0, None).unwrap();
        let expected: f64 = 1.0 + (1..10).map(|n| 2.0 * (-2.0 * PI * (n * n) as f64).exp()).sum::<f64>();
        assert!((v.re - expected).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn triangle_inequality() {
        let seq = elliptic14_sequence(2000).unwrap();
        let y = 0.01;
        let bound: f64 = seq
            .terms()
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm() * (-2.0 * PI * y * (i + 1) as f64).exp())
            .sum();
        for x in [0.0, 0.1, 0.5, 0.77] {
            assert!(eval_halfplane(&seq, x, y, None).unwrap().norm() <= bound);
        }
    }

    #[test]
    fn rejects_nonpositive_y() {
        let seq = theta12_sequence(10).unwrap();
        assert!(matches!(eval_halfplane(&seq, 0.0, 0.0, None), Err(Error::Domain(_))));
        assert!(matches!(eval_halfplane(&seq, 0.0, -1.0, None), Err(Error::Domain(_))));
    }

    #[test]
    fn fft_grid_matches_pointwise() {
        let seq = elliptic14_sequence(5000).unwrap();
        let y = 1e-3;
        let grid = halfplane_grid_fft(&seq, 0.1, y, 1024, None).unwrap();
        for j in [0usize, 17, 512, 1023] {
            let direct = eval_halfplane(&seq, 0.1 + j as f64 / 1024.0, y, None).unwrap();
            assert!((grid[j] - direct).norm() < 1e-10 * direct.norm().max(1.0), "j={j}");
        }
    }

    #[test]
    fn poisson_kernel_values() {
        for r in [0.0, 0.3, 0.9] {
            assert!((poisson_kernel(r, 0.0).unwrap() - (1.0 + r) / (1.0 - r)).abs() < 1e-14);
        }
        assert_eq!(poisson_kernel(0.0, 0.37).unwrap(), 1.0);
        assert!(poisson_kernel(1.0, 0.0).is_err());
        assert!(poisson_kernel(-0.1, 0.0).is_err());
        let rule = GaussLegendre::new(40);
        let edges: Vec<f64> = (0..=64).map(|i| -0.5 + i as f64 / 64.0).collect();
        let total = rule.integrate_panels(&edges, |t| Complex64::new(poisson_kernel(0.9, t).unwrap(), 0.0));
        assert!((total.re - 1.0).abs() < 1e-8);
    }
}
