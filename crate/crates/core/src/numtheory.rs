//! Elementary number-theoretic kernels: primes, point counts on Weierstrass
//! curves over prime fields, divisor power sums and two-square lattice sums.

use crate::error::{Error, Result};

/// Primes in `[2, limit]`, ascending (sieve of Eratosthenes).
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::EmptyDomain(format!("no primes below {limit}")));
    }
    let n = usize::try_from(limit).map_err(|_| Error::Resource(format!("sieve limit {limit}")))?;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(primes)
}

/// Smallest-prime-factor table for `0..=n` (entries 0 and 1 are 0).
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= n {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Long Weierstrass model `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

impl WeierstrassCurve {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self> {
        let curve = Self { a1, a2, a3, a4, a6 };
        if curve.discriminant()? == 0 {
            return Err(Error::Input(format!("singular curve {:?}", [a1, a2, a3, a4, a6])));
        }
        Ok(curve)
    }

    /// The curve attached to the weight-2 newform of level 14 used throughout.
    pub fn level14() -> Self {
        Self { a1: 1, a2: 0, a3: 1, a4: 4, a6: -6 }
    }

    fn b_invariants(&self) -> Option<(i128, i128, i128, i128)> {
        let (a1, a2, a3, a4, a6) = (
            self.a1 as i128,
            self.a2 as i128,
            self.a3 as i128,
            self.a4 as i128,
            self.a6 as i128,
        );
        let b2 = a1.checked_mul(a1)?.checked_add(a2.checked_mul(4)?)?;
        let b4 = a4.checked_mul(2)?.checked_add(a1.checked_mul(a3)?)?;
        let b6 = a3.checked_mul(a3)?.checked_add(a6.checked_mul(4)?)?;
        let b8 = a1
            .checked_mul(a1)?
            .checked_mul(a6)?
            .checked_add(a2.checked_mul(a6)?.checked_mul(4)?)?
            .checked_sub(a1.checked_mul(a3)?.checked_mul(a4)?)?
            .checked_add(a2.checked_mul(a3)?.checked_mul(a3)?)?
            .checked_sub(a4.checked_mul(a4)?)?;
        Some((b2, b4, b6, b8))
    }

    /// Global discriminant of the model.
    pub fn discriminant(&self) -> Result<i128> {
        let overflow = || Error::Overflow("curve discriminant".into());
        let (b2, b4, b6, b8) = self.b_invariants().ok_or_else(overflow)?;
        let t1 = b2.checked_mul(b2).and_then(|v| v.checked_mul(b8)).ok_or_else(overflow)?;
        let t2 = b4
            .checked_pow(3)
            .and_then(|v| v.checked_mul(8))
            .ok_or_else(overflow)?;
        let t3 = b6.checked_mul(b6).and_then(|v| v.checked_mul(27)).ok_or_else(overflow)?;
        let t4 = b2
            .checked_mul(b4)
            .and_then(|v| v.checked_mul(b6))
            .and_then(|v| v.checked_mul(9))
            .ok_or_else(overflow)?;
        (-t1)
            .checked_sub(t2)
            .and_then(|v| v.checked_sub(t3))
            .and_then(|v| v.checked_add(t4))
            .ok_or_else(overflow)
    }

    pub fn has_bad_reduction(&self, p: u64) -> bool {
        match self.discriminant() {
            Ok(d) => d.rem_euclid(p as i128) == 0,
            Err(_) => false,
        }
    }

    fn reduced(&self, p: u64) -> [u64; 5] {
        let r = |a: i64| a.rem_euclid(p as i64) as u64;
        [r(self.a1), r(self.a2), r(self.a3), r(self.a4), r(self.a6)]
    }
}

/// Number of projective points of the reduction mod `p` on its nonsingular
/// locus: `#E(F_p)` at good primes, `#E_ns(F_p)` at bad ones. The point at
/// infinity is always counted.
pub fn curve_point_count(curve: &WeierstrassCurve, p: u64) -> u64 {
    if p == 2 {
        return count_nonsingular_exhaustive(curve, p);
    }
    // (2y + a1 x + a3)² = g(x) with g = 4x³ + b2 x² + 2 b4 x + b6, then one
    // table lookup per x.
    let [a1, a2, a3, a4, a6] = curve.reduced(p);
    let m = |u: u64, v: u64| (u * v) % p;
    let b2 = (m(a1, a1) + 4 * a2) % p;
    let b4x2 = (2 * (2 * a4 + m(a1, a3))) % p;
    let b6 = (m(a3, a3) + 4 * a6) % p;
    let add = |u: u64, v: u64| {
        let w = u + v;
        if w >= p {
            w - p
        } else {
            w
        }
    };
    let mut is_square = vec![false; p as usize];
    let (mut sq, mut odd) = (0u64, 1u64);
    for _ in 0..p.div_ceil(2) {
        is_square[sq as usize] = true;
        sq = add(sq, odd);
        odd = add(odd, 2 % p);
    }
    // g and its forward differences, stepped x → x + 1
    let mut g = b6;
    let mut d1 = (4 + b2 + b4x2) % p;
    let mut d2 = (24 + 2 * b2) % p;
    let d3 = 24 % p;
    let mut count = 1u64;
    for x in 0..p {
        if g == 0 {
            // Y = 0 is a double root; the point is singular iff g'(x) = 0 too.
            let x2 = m(x, x);
            let dg = (12 * x2 + 2 * m(b2, x) + b4x2) % p;
            if dg != 0 {
                count += 1;
            }
        } else if is_square[g as usize] {
            count += 2;
        }
        g = add(g, d1);
        d1 = add(d1, d2);
        d2 = add(d2, d3);
    }
    count
}

fn count_nonsingular_exhaustive(curve: &WeierstrassCurve, p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = curve.reduced(p).map(|a| a as i64);
    let p = p as i64;
    let mut count = 1u64;
    for x in 0..p {
        for y in 0..p {
            let f = y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6);
            if f.rem_euclid(p) != 0 {
                continue;
            }
            let fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4).rem_euclid(p);
            let fy = (2 * y + a1 * x + a3).rem_euclid(p);
            if fx != 0 || fy != 0 {
                count += 1;
            }
        }
    }
    count
}

/// Trace of Frobenius with the local-factor convention at bad primes.
pub fn curve_ap(curve: &WeierstrassCurve, p: u64) -> i64 {
    let n = curve_point_count(curve, p) as i64;
    if curve.has_bad_reduction(p) {
        p as i64 - n
    } else {
        p as i64 + 1 - n
    }
}

/// `σ_{k−1}(n)` for `n = 0..=n_max`, indexed by `n` (entry 0 is 0).
pub fn divisor_power_sum_table(k_minus_1: u32, n_max: usize) -> Result<Vec<u128>> {
    if n_max == 0 {
        return Err(Error::EmptyDomain("divisor table needs N ≥ 1".into()));
    }
    let mut table = vec![0u128; n_max + 1];
    for d in 1..=n_max {
        let power = (d as u128)
            .checked_pow(k_minus_1)
            .ok_or_else(|| Error::Overflow(format!("{d}^{k_minus_1}")))?;
        let mut multiple = d;
        while multiple <= n_max {
            table[multiple] = table[multiple]
                .checked_add(power)
                .ok_or_else(|| Error::Overflow(format!("σ_{k_minus_1}({multiple})")))?;
            multiple += d;
        }
    }
    Ok(table)
}

/// Integer polynomial in two variables, stored as `(coefficient, deg_x, deg_y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    pub terms: Vec<(i64, u32, u32)>,
}

impl BivariatePoly {
    pub fn new(terms: Vec<(i64, u32, u32)>) -> Self {
        Self { terms }
    }

    /// `x⁴ + y⁴ − 6x²y²`, the degree-4 harmonic polynomial.
    pub fn harmonic_quartic() -> Self {
        Self::new(vec![(1, 4, 0), (1, 0, 4), (-6, 2, 2)])
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|&(_, i, j)| i + j).max().unwrap_or(0)
    }

    pub fn eval(&self, x: i64, y: i64) -> Result<i64> {
        let overflow = || Error::Overflow("polynomial evaluation".into());
        self.terms.iter().try_fold(0i64, |acc, &(c, i, j)| {
            let term = x
                .checked_pow(i)
                .and_then(|xi| y.checked_pow(j).and_then(|yj| xi.checked_mul(yj)))
                .and_then(|v| v.checked_mul(c))
                .ok_or_else(overflow)?;
            acc.checked_add(term).ok_or_else(overflow)
        })
    }
}

/// `Σ P(n, m)` over every `(n, m) ∈ ℤ²` with `n² + m² = k`.
pub fn two_square_weighted_sum(k: u64, poly: &BivariatePoly) -> Result<i64> {
    if k == 0 {
        return Err(Error::Input("k must be positive".into()));
    }
    let root = isqrt(k) as i64;
    let mut total = 0i64;
    for n in -root..=root {
        let rest = k - (n * n) as u64;
        let m = isqrt(rest);
        if m * m != rest {
            continue;
        }
        let m = m as i64;
        let value = poly.eval(n, m)?;
        total = total
            .checked_add(value)
            .ok_or_else(|| Error::Overflow("two-square sum".into()))?;
        if m != 0 {
            total = total
                .checked_add(poly.eval(n, -m)?)
                .ok_or_else(|| Error::Overflow("two-square sum".into()))?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        (2..=limit)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    // O(p²) oracle over all affine pairs, nonsingular points only, plus ∞.
    fn brute_count(c: &WeierstrassCurve, p: u64) -> u64 {
        let p = p as i64;
        let md = |v: i64| v.rem_euclid(p);
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                let f = y * y + c.a1 * x * y + c.a3 * y - x * x * x - c.a2 * x * x - c.a4 * x - c.a6;
                if md(f) != 0 {
                    continue;
                }
                let fx = c.a1 * y - 3 * x * x - 2 * c.a2 * x - c.a4;
                let fy = 2 * y + c.a1 * x + c.a3;
                if md(fx) != 0 || md(fy) != 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn sieve_small_cases() {
        assert_eq!(sieve_primes(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap(), vec![2]);
        assert!(matches!(sieve_primes(1), Err(Error::EmptyDomain(_))));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let fast = sieve_primes(10_000).unwrap();
        assert_eq!(fast.len(), 1229);
        assert_eq!(fast, trial_division_primes(10_000));
        for limit in [2u64, 3, 4, 97, 100, 1000, 4099] {
            assert_eq!(sieve_primes(limit).unwrap(), trial_division_primes(limit));
        }
    }

    #[test]
    fn level14_discriminant() {
        let e = WeierstrassCurve::level14();
        assert_eq!(e.discriminant().unwrap(), -21952);
        assert!(e.has_bad_reduction(2) && e.has_bad_reduction(7));
        assert!(!e.has_bad_reduction(3));
        assert!(WeierstrassCurve::new(0, 0, 0, 0, 0).is_err());
    }

    #[test]
    fn point_counts_against_exhaustive_oracle() {
        let e = WeierstrassCurve::level14();
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(curve_point_count(&e, p), brute_count(&e, p), "p = {p}");
        }
        let c = WeierstrassCurve::new(0, 0, 0, 0, 1).unwrap();
        assert_eq!(curve_point_count(&c, 5), 6);
        assert_eq!(brute_count(&c, 5), 6);
    }

    #[test]
    fn point_counts_random_good_primes() {
        use rand::{seq::SliceRandom, SeedableRng};
        let e = WeierstrassCurve::level14();
        let primes: Vec<u64> = sieve_primes(1000).unwrap().into_iter().filter(|&p| p > 7).collect();
        let mut rng = rand::rngs::StdRng::seed_from_u64(14);
        for &p in primes.choose_multiple(&mut rng, 20) {
            assert_eq!(curve_point_count(&e, p), brute_count(&e, p), "p = {p}");
        }
    }

    #[test]
    fn ap_values() {
        let e = WeierstrassCurve::level14();
        assert_eq!(curve_ap(&e, 11), 11 + 1 - brute_count(&e, 11) as i64);
        assert_eq!(curve_ap(&e, 2), 2 - brute_count(&e, 2) as i64);
        // multiplicative reduction at both bad primes
        assert_eq!(curve_ap(&e, 2), -1);
        assert_eq!(curve_ap(&e, 7), 1);
        assert_eq!(curve_ap(&e, 3), -2);
        // supersingular example: y² = x³ + 1 at p = 5 has p + 1 points
        let c = WeierstrassCurve::new(0, 0, 0, 0, 1).unwrap();
        assert_eq!(curve_ap(&c, 5), 0);
    }

    #[test]
    fn hasse_bound_up_to_ten_thousand() {
        let e = WeierstrassCurve::level14();
        for p in sieve_primes(10_000).unwrap() {
            if e.has_bad_reduction(p) {
                continue;
            }
            let ap = curve_ap(&e, p) as f64;
            assert!(ap.abs() <= 2.0 * (p as f64).sqrt(), "p = {p}, a_p = {ap}");
        }
    }

    fn sigma_direct(k1: u32, n: u64) -> u128 {
        (1..=n).filter(|d| n % d == 0).map(|d| (d as u128).pow(k1)).sum()
    }

    #[test]
    fn divisor_table_small_values() {
        let t = divisor_power_sum_table(3, 12).unwrap();
        assert_eq!(t[1], 1);
        assert_eq!(t[6], 1 + 8 + 27 + 216);
        assert_eq!(divisor_power_sum_table(1, 12).unwrap()[12], 28);
        assert!(divisor_power_sum_table(3, 0).is_err());
    }

    #[test]
    fn divisor_table_matches_enumeration() {
        for (k1, n_max) in [(1u32, 1000u64), (3, 1000), (5, 1000), (7, 1000)] {
            let t = divisor_power_sum_table(k1, n_max as usize).unwrap();
            for n in 1..=n_max {
                assert_eq!(t[n as usize], sigma_direct(k1, n));
            }
        }
    }

    #[test]
    fn divisor_table_overflow_is_reported() {
        assert!(matches!(divisor_power_sum_table(40, 10), Err(Error::Overflow(_))));
        // σ_7(n) passes 2^128 before n = 2^20
        assert!(matches!(divisor_power_sum_table(7, 1 << 20), Err(Error::Overflow(_))));
        assert!(divisor_power_sum_table(3, 1 << 20).is_ok());
    }

    fn lattice_oracle(k: i64, p: &BivariatePoly) -> i64 {
        let r = (k as f64).sqrt() as i64 + 1;
        let mut s = 0;
        for n in -r..=r {
            for m in -r..=r {
                if n * n + m * m == k {
                    s += p.eval(n, m).unwrap();
                }
            }
        }
        s
    }

    #[test]
    fn two_square_sums() {
        let p = BivariatePoly::harmonic_quartic();
        assert_eq!(two_square_weighted_sum(1, &p).unwrap(), 4);
        assert_eq!(two_square_weighted_sum(2, &p).unwrap(), -16);
        assert_eq!(two_square_weighted_sum(3, &p).unwrap(), 0);
        for k in 1..400 {
            assert_eq!(two_square_weighted_sum(k as u64, &p).unwrap(), lattice_oracle(k, &p), "k = {k}");
        }
        let q = BivariatePoly::new(vec![(3, 1, 2), (-1, 0, 0)]);
        for k in [5i64, 25, 50, 65] {
            assert_eq!(two_square_weighted_sum(k as u64, &q).unwrap(), lattice_oracle(k, &q));
        }
    }

    #[test]
    fn two_square_vanishes_at_three_mod_four() {
        let p = BivariatePoly::harmonic_quartic();
        let constant = BivariatePoly::new(vec![(1, 0, 0)]);
        for k in (3..=10_000u64).step_by(4) {
            assert_eq!(two_square_weighted_sum(k, &p).unwrap(), 0);
            assert_eq!(two_square_weighted_sum(k, &constant).unwrap(), 0);
        }
    }
}
