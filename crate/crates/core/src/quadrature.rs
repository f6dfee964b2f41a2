//! Gauss–Legendre and tanh-sinh rules for complex-valued integrands.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `n`-point Gauss–Legendre rule on `[−1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            if 2 * i + 1 == n {
                x = 0.0;
                dp = legendre_with_derivative(n, 0.0).1;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f`.
    pub fn integrate<F>(&self, a: f64, b: f64, f: F) -> Complex64
    where
        F: Fn(f64) -> Complex64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = Complex64::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += f(mid + half * x) * *w;
        }
        sum * half
    }

    /// Sum of the rule over consecutive panels `[edges[i], edges[i+1]]`.
    pub fn integrate_panels<F>(&self, edges: &[f64], f: F) -> Complex64
    where
        F: Fn(f64) -> Complex64,
    {
        edges.windows(2).map(|w| self.integrate(w[0], w[1], &f)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive rule.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Complex64,
    /// Difference between the last two refinement levels.
    pub error: f64,
    pub evaluations: usize,
}

/// Double-exponential (tanh-sinh) rule on `[a, b]`, tolerant of integrable
/// endpoint singularities. The integrand is never evaluated at `a` or `b`.
///
/// Refines by halving the step until two successive levels differ by less
/// than `tol · max(1, |I|)`.
pub fn tanh_sinh<F>(a: f64, b: f64, tol: f64, f: F) -> Result<Quadrature>
where
    F: Fn(f64) -> Complex64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("tanh-sinh needs a finite interval, got [{a}, {b}]")));
    }
    const T_MAX: f64 = 6.0;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    // Contribution of the abscissa ±t (each side skipped once it sits on an endpoint).
    let pair = |t: f64| -> Complex64 {
        let u = 0.5 * PI * t.sinh();
        let cosh_u = u.cosh();
        let w = 0.5 * PI * t.cosh() / (cosh_u * cosh_u);
        // 1 − tanh(u) without cancellation
        let gap = half * (-u).exp() / cosh_u;
        let mut s = Complex64::default();
        if w == 0.0 || gap == 0.0 {
            return s;
        }
        let (xl, xr) = (a + gap, b - gap);
        if t == 0.0 {
            return f(mid) * w;
        }
        if xl > a && xl < b {
            s += f(xl) * w;
        }
        if xr < b && xr > a {
            s += f(xr) * w;
        }
        s
    };

    let mut h = 0.5;
    let mut evaluations = 1;
    let mut sum = pair(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        sum += pair(k as f64 * h);
        evaluations += 2;
        k += 1;
    }
    let mut estimate = sum * h * half;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            sum += pair(k as f64 * h);
            evaluations += 2;
            k += 2;
        }
        let next = sum * h * half;
        if !next.is_finite() {
            return Err(Error::Numerical("tanh-sinh produced a non-finite value".into()));
        }
        let error = (next - estimate).norm();
        estimate = next;
        if error <= tol * next.norm().max(1.0) {
            return Ok(Quadrature { value: next, error, evaluations });
        }
    }
    Err(Error::Numerical(format!("tanh-sinh did not reach tolerance {tol:e}")))
}
