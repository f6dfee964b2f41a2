//! Brute-force oracles shared by the integration tests. None of these call
//! into the library's own generators.

#![allow(dead_code)]

use fracmod::Complex64;

/// Affine points of `y² + a1xy + a3y = x³ + a2x² + a4x + a6` over `F_p` by
/// trying every pair, plus the point at infinity.
pub fn naive_point_count(a: [i64; 5], p: i64) -> i64 {
    let [a1, a2, a3, a4, a6] = a;
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = y * y + a1 * x * y + a3 * y;
            let rhs = x * x * x + a2 * x * x + a4 * x + a6;
            if (lhs - rhs).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    count
}

pub fn naive_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `c_n` for `n ≡ ±1, ±5 (mod 12)`.
pub fn theta12_sign(n: i64) -> i64 {
    match n.rem_euclid(12) {
        1 | 11 => 1,
        5 | 7 => -1,
        _ => 0,
    }
}

/// `a_0..=a_n` of `Σ_{m ≥ 1} c_m q^{m²}`.
pub fn theta12_oracle(n: usize) -> Vec<i64> {
    let mut a = vec![0; n + 1];
    for m in 1..=n {
        if m * m > n {
            break;
        }
        a[m * m] = theta12_sign(m as i64);
    }
    a
}

/// `a_0..=a_n` of `Σ_{m ∈ ℤ} q^{m²}` by counting lattice points.
pub fn jacobi_oracle(n: usize) -> Vec<i64> {
    let r = (n as f64).sqrt() as i64 + 1;
    let mut a = vec![0; n + 1];
    for m in -r..=r {
        let k = (m * m) as usize;
        if k <= n {
            a[k] += 1;
        }
    }
    a
}

/// `a_0..=a_n` of `Σ_{(x,y) ∈ ℤ²} (x⁴ + y⁴ − 6x²y²) q^{x²+y²}`.
pub fn harmonic_oracle(n: usize) -> Vec<i64> {
    let r = (n as f64).sqrt() as i64 + 1;
    let mut a = vec![0; n + 1];
    for x in -r..=r {
        for y in -r..=r {
            let k = (x * x + y * y) as usize;
            if k <= n {
                a[k] += x.pow(4) + y.pow(4) - 6 * x * x * y * y;
            }
        }
    }
    a
}

/// `σ_k(n)` by trial division.
pub fn sigma_oracle(k: u32, n: u64) -> u128 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as u128).pow(k)).sum()
}

/// Periodic trapezoid rule on `[lo, lo + 1)`: exact for trigonometric
/// polynomials of degree below `m`.
pub fn periodic_trapezoid(lo: f64, m: usize, f: impl Fn(f64) -> Complex64) -> Complex64 {
    let h = 1.0 / m as f64;
    (0..m).map(|j| f(lo + j as f64 * h)).sum::<Complex64>() * h
}

/// `Σ_{n ≤ N} w_n e(n x)` by plain summation with `sin_cos` per term.
pub fn naive_series(weights: &[Complex64], x: f64) -> Complex64 {
    weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let t = 2.0 * std::f64::consts::PI * ((i + 1) as f64 * x).rem_euclid(1.0);
            w * Complex64::new(t.cos(), t.sin())
        })
        .sum()
}

/// Ordinary least-squares slope.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
