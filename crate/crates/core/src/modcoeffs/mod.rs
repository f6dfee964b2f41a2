//! The built-in coefficient sequences and their modular metadata.

mod cache;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numtheory::{
    self, divisor_power_sum_table, gcd, smallest_prime_factors, BivariatePoly, WeierstrassCurve,
};

pub use cache::{load_or_generate, read_cache, write_cache};

/// Largest prime range for which the elliptic sequence is generated.
pub const ELLIPTIC_MAX_N: usize = 1 << 17;
pub const HARMONIC_MAX_N: usize = 1 << 20;
pub const EISENSTEIN_MAX_N: usize = 1 << 20;

/// How a sequence behaves at the rational cusps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CuspRule {
    /// Cusp form: exponential decay at every rational.
    AllCuspidal,
    /// θ on Γ₀(4): cuspidal exactly at p/q with q ≡ 2 (mod 4).
    Gamma04Theta,
    /// Non-cuspidal at every rational (Eisenstein series of level one).
    FullModularNoncuspidal,
}

impl CuspRule {
    pub fn tag(self) -> &'static str {
        match self {
            CuspRule::AllCuspidal => "all-cuspidal",
            CuspRule::Gamma04Theta => "gamma0_4-theta",
            CuspRule::FullModularNoncuspidal => "full-modular-noncuspidal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CuspKind {
    Cuspidal,
    NotCuspidal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CuspBehavior {
    pub kind: CuspKind,
    /// True when `f(p/q + iy)` is expected to decay like `e^{−K/y}`.
    pub decay_constant_expected: bool,
}

impl CuspBehavior {
    pub fn new(kind: CuspKind) -> Self {
        Self { kind, decay_constant_expected: kind == CuspKind::Cuspidal }
    }
}

/// Names of the built-in sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceName {
    Elliptic14,
    Theta12,
    Jacobi,
    Harmonic,
    Eisenstein(u32),
}

impl SequenceName {
    pub const ALL: [SequenceName; 7] = [
        SequenceName::Elliptic14,
        SequenceName::Theta12,
        SequenceName::Jacobi,
        SequenceName::Harmonic,
        SequenceName::Eisenstein(4),
        SequenceName::Eisenstein(6),
        SequenceName::Eisenstein(8),
    ];

    pub fn generate(self, n: usize) -> Result<CoefficientSequence> {
        match self {
            SequenceName::Elliptic14 => elliptic14_sequence(n),
            SequenceName::Theta12 => theta12_sequence(n),
            SequenceName::Jacobi => jacobi_theta_sequence(n),
            SequenceName::Harmonic => harmonic_theta_sequence(n),
            SequenceName::Eisenstein(k) => eisenstein_sequence(k, n),
        }
    }
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceName::Elliptic14 => f.write_str("elliptic14"),
            SequenceName::Theta12 => f.write_str("theta12"),
            SequenceName::Jacobi => f.write_str("jacobi"),
            SequenceName::Harmonic => f.write_str("harmonic"),
            SequenceName::Eisenstein(k) => write!(f, "eisenstein{k}"),
        }
    }
}

impl FromStr for SequenceName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "elliptic14" => SequenceName::Elliptic14,
            "theta12" => SequenceName::Theta12,
            "jacobi" | "jacobi_theta" => SequenceName::Jacobi,
            "harmonic" | "harmonic_theta" => SequenceName::Harmonic,
            _ => match s.strip_prefix("eisenstein").map(str::parse::<u32>) {
                Some(Ok(k)) if matches!(k, 4 | 6 | 8) => SequenceName::Eisenstein(k),
                _ => return Err(Error::Input(format!("unknown sequence `{s}`"))),
            },
        })
    }
}

/// A finite piece `a_0, a_1, …, a_N` of an arithmetic sequence with the
/// modular data needed by the evaluators and the prediction engine.
///
/// All built-in sequences are one-sided (`a_n = 0` for `n < 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    pub name: String,
    pub a0: Complex64,
    /// `terms[n - 1] = a_n`.
    terms: Vec<Complex64>,
    pub weight: Rational64,
    pub growth_exponent: Rational64,
    pub is_cusp_form: bool,
    pub cusp_rule: CuspRule,
    pub convergence_threshold: Rational64,
}

impl CoefficientSequence {
    /// Builds a sequence after checking the structural invariants.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        a0: Complex64,
        terms: Vec<Complex64>,
        weight: Rational64,
        growth_exponent: Rational64,
        is_cusp_form: bool,
        cusp_rule: CuspRule,
        convergence_threshold: Rational64,
    ) -> Result<Self> {
        let name = name.into();
        if terms.is_empty() {
            return Err(Error::EmptyDomain(format!("{name}: no coefficients")));
        }
        if !a0.is_finite() || terms.iter().any(|a| !a.is_finite()) {
            return Err(Error::Input(format!("{name}: non-finite coefficient")));
        }
        let zero = Rational64::from_integer(0);
        if weight <= zero || growth_exponent <= zero {
            return Err(Error::Input(format!("{name}: weight and γ must be positive")));
        }
        if is_cusp_form && a0 != Complex64::new(0.0, 0.0) {
            return Err(Error::Input(format!("{name}: cusp form with a_0 ≠ 0")));
        }
        if is_cusp_form && growth_exponent != weight / 2 {
            return Err(Error::Input(format!("{name}: cusp form needs γ = r/2")));
        }
        Ok(Self {
            name,
            a0,
            terms,
            weight,
            growth_exponent,
            is_cusp_form,
            cusp_rule,
            convergence_threshold,
        })
    }

    /// Plain sequence with no modular structure, for tests and custom input:
    /// `γ = r/2 = 1/2`, treated as cuspidal when `a_0 = 0`.
    pub fn plain(name: impl Into<String>, a0: Complex64, terms: Vec<Complex64>) -> Result<Self> {
        let half = Rational64::new(1, 2);
        let cusp = a0 == Complex64::new(0.0, 0.0);
        let rule = if cusp { CuspRule::AllCuspidal } else { CuspRule::FullModularNoncuspidal };
        Self::new(name, a0, terms, Rational64::from_integer(1), half, cusp, rule, half)
    }

    /// Number of materialized terms `N` (excluding `a_0`).
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a_n` for `0 ≤ n ≤ N`; zero beyond the materialized range.
    pub fn coeff(&self, n: usize) -> Complex64 {
        match n {
            0 => self.a0,
            _ => self.terms.get(n - 1).copied().unwrap_or_default(),
        }
    }

    /// `a_1, …, a_N`.
    pub fn terms(&self) -> &[Complex64] {
        &self.terms
    }

    pub fn is_real(&self) -> bool {
        self.a0.im == 0.0 && self.terms.iter().all(|a| a.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|a| a.norm()).fold(self.a0.norm(), f64::max)
    }

    pub fn weight_f64(&self) -> f64 {
        rational_to_f64(self.weight)
    }

    pub fn gamma_f64(&self) -> f64 {
        rational_to_f64(self.growth_exponent)
    }

    /// The first `n` terms (same metadata).
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::Resource(format!(
                "{}: cannot truncate {} terms to {n}",
                self.name,
                self.len()
            )));
        }
        let mut out = self.clone();
        out.terms.truncate(n);
        Ok(out)
    }
}

pub fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn real_terms(values: impl IntoIterator<Item = i64>) -> Vec<Complex64> {
    values.into_iter().map(|v| Complex64::new(v as f64, 0.0)).collect()
}

/// Extends prime values multiplicatively to `a_1..a_N`.
///
/// The returned vector is indexed by `n` (entry 0 is 0). Good primes follow
/// `a_{p^{j+1}} = a_p a_{p^j} − p^{r−1} a_{p^{j−1}}`, bad primes `a_{p^j} = a_p^j`.
pub fn hecke_extend(
    prime_values: &HashMap<u64, i64>,
    bad_primes: &HashSet<u64>,
    weight: u32,
    n_max: usize,
) -> Result<Vec<i64>> {
    if n_max == 0 {
        return Err(Error::EmptyDomain("hecke_extend needs N ≥ 1".into()));
    }
    if weight == 0 {
        return Err(Error::Input("weight must be positive".into()));
    }
    let overflow = |n: usize| Error::Overflow(format!("Hecke extension at n = {n}"));
    let spf = smallest_prime_factors(n_max);
    let mut a = vec![0i64; n_max + 1];
    a[1] = 1;
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut m = n;
        let mut pj = 1usize;
        while m % p == 0 {
            m /= p;
            pj *= p;
        }
        if m > 1 {
            a[n] = a[pj].checked_mul(a[m]).ok_or_else(|| overflow(n))?;
            continue;
        }
        let ap = *prime_values
            .get(&(p as u64))
            .ok_or_else(|| Error::Input(format!("missing a_p for p = {p}")))?;
        a[n] = if pj == p {
            ap
        } else if bad_primes.contains(&(p as u64)) {
            a[pj / p].checked_mul(ap).ok_or_else(|| overflow(n))?
        } else {
            let chi = (p as i64).checked_pow(weight - 1).ok_or_else(|| overflow(n))?;
            let first = ap.checked_mul(a[pj / p]).ok_or_else(|| overflow(n))?;
            let second = chi.checked_mul(a[pj / p / p]).ok_or_else(|| overflow(n))?;
            first.checked_sub(second).ok_or_else(|| overflow(n))?
        };
    }
    Ok(a)
}

/// q-expansion of the weight-2 newform attached to the level-14 curve.
pub fn elliptic14_sequence(n: usize) -> Result<CoefficientSequence> {
    if n == 0 {
        return Err(Error::EmptyDomain("N must be positive".into()));
    }
    if n > ELLIPTIC_MAX_N {
        return Err(Error::Resource(format!("elliptic14 capped at N = {ELLIPTIC_MAX_N}")));
    }
    let curve = WeierstrassCurve::level14();
    let primes = if n >= 2 { numtheory::sieve_primes(n as u64)? } else { Vec::new() };
    let values: HashMap<u64, i64> =
        primes.par_iter().map(|&p| (p, numtheory::curve_ap(&curve, p))).collect();
    let bad: HashSet<u64> = primes.iter().copied().filter(|&p| curve.has_bad_reduction(p)).collect();
    let a = hecke_extend(&values, &bad, 2, n)?;
    CoefficientSequence::new(
        "elliptic14",
        Complex64::default(),
        real_terms(a[1..].iter().copied()),
        Rational64::from_integer(2),
        Rational64::from_integer(1),
        true,
        CuspRule::AllCuspidal,
        Rational64::new(3, 2),
    )
}

/// The character `c_n` of the weight-1/2 theta cusp form.
pub fn theta12_character(n: u64) -> i64 {
    match n % 12 {
        1 | 11 => 1,
        5 | 7 => -1,
        _ => 0,
    }
}

/// `Σ c_n q^{n²}`, a cusp form of weight 1/2, indexed by the exponent `k`.
pub fn theta12_sequence(n: usize) -> Result<CoefficientSequence> {
    if n == 0 {
        return Err(Error::EmptyDomain("N must be positive".into()));
    }
    let mut a = vec![0i64; n];
    let mut m = 1u64;
    while (m * m) as usize <= n {
        a[(m * m) as usize - 1] = theta12_character(m);
        m += 1;
    }
    let quarter = Rational64::new(1, 4);
    CoefficientSequence::new(
        "theta12",
        Complex64::default(),
        real_terms(a),
        Rational64::new(1, 2),
        quarter,
        true,
        CuspRule::AllCuspidal,
        quarter,
    )
}

/// Jacobi's `θ(z) = Σ_{n∈ℤ} e(n² z)`.
pub fn jacobi_theta_sequence(n: usize) -> Result<CoefficientSequence> {
    if n == 0 {
        return Err(Error::EmptyDomain("N must be positive".into()));
    }
    let mut a = vec![0i64; n];
    let mut m = 1usize;
    while m * m <= n {
        a[m * m - 1] = 2;
        m += 1;
    }
    let quarter = Rational64::new(1, 4);
    CoefficientSequence::new(
        "jacobi",
        Complex64::new(1.0, 0.0),
        real_terms(a),
        Rational64::new(1, 2),
        quarter,
        false,
        CuspRule::Gamma04Theta,
        quarter,
    )
}

/// Theta series of `x⁴ + y⁴ − 6x²y²` over ℤ², a cusp form of weight 5.
pub fn harmonic_theta_sequence(n: usize) -> Result<CoefficientSequence> {
    if n == 0 {
        return Err(Error::EmptyDomain("N must be positive".into()));
    }
    if n > HARMONIC_MAX_N {
        return Err(Error::Resource(format!("harmonic capped at N = {HARMONIC_MAX_N}")));
    }
    let poly = BivariatePoly::harmonic_quartic();
    let root = numtheory::isqrt(n as u64) as i64;
    let mut a = vec![0i64; n + 1];
    for x in -root..=root {
        let rest = n as i64 - x * x;
        let ymax = numtheory::isqrt(rest as u64) as i64;
        for y in -ymax..=ymax {
            let k = (x * x + y * y) as usize;
            if k == 0 {
                continue;
            }
            a[k] = a[k]
                .checked_add(poly.eval(x, y)?)
                .ok_or_else(|| Error::Overflow(format!("harmonic a_{k}")))?;
        }
    }
    let weight = Rational64::from_integer(5);
    CoefficientSequence::new(
        "harmonic",
        Complex64::default(),
        real_terms(a[1..].iter().copied()),
        weight,
        weight / 2,
        true,
        CuspRule::AllCuspidal,
        weight / 2,
    )
}

/// `a_n = σ_{k−1}(n)`, with `a_0 = ζ(1−k)/2` so that the series is modular.
pub fn eisenstein_sequence(k: u32, n: usize) -> Result<CoefficientSequence> {
    if k % 2 != 0 || !(4..=8).contains(&k) {
        return Err(Error::Input(format!("Eisenstein weight must be 4, 6 or 8, got {k}")));
    }
    if n == 0 {
        return Err(Error::EmptyDomain("N must be positive".into()));
    }
    if n > EISENSTEIN_MAX_N {
        return Err(Error::Resource(format!("eisenstein capped at N = {EISENSTEIN_MAX_N}")));
    }
    let sigma = divisor_power_sum_table(k - 1, n)?;
    let terms = sigma[1..].iter().map(|&s| Complex64::new(s as f64, 0.0)).collect();
    let weight = Rational64::from_integer(k as i64);
    CoefficientSequence::new(
        format!("eisenstein{k}"),
        Complex64::new(eisenstein_constant_term(k), 0.0),
        terms,
        weight,
        weight,
        false,
        CuspRule::FullModularNoncuspidal,
        weight,
    )
}

/// `−B_k / (2k)`, the constant term of `Σ σ_{k−1}(n) qⁿ` completed to a
/// modular form.
fn eisenstein_constant_term(k: u32) -> f64 {
    match k {
        4 => 1.0 / 240.0,
        6 => -1.0 / 504.0,
        8 => 1.0 / 480.0,
        _ => unreachable!("weight checked by caller"),
    }
}

/// Cuspidal or not at the reduced fraction `p/q`.
pub fn classify_rational_point(seq: &CoefficientSequence, p: i64, q: i64) -> Result<CuspBehavior> {
    if q <= 0 {
        return Err(Error::Input(format!("denominator must be positive, got {q}")));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Input(format!("{p}/{q} is not reduced")));
    }
    let kind = match seq.cusp_rule {
        CuspRule::AllCuspidal => CuspKind::Cuspidal,
        CuspRule::FullModularNoncuspidal => CuspKind::NotCuspidal,
        CuspRule::Gamma04Theta if q % 4 == 2 => CuspKind::Cuspidal,
        CuspRule::Gamma04Theta => CuspKind::NotCuspidal,
    };
    Ok(CuspBehavior::new(kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(seq: &CoefficientSequence, n: usize) -> i64 {
        let a = seq.coeff(n);
        assert_eq!(a.im, 0.0);
        a.re as i64
    }

    #[test]
    fn elliptic_matches_known_expansion() {
        let seq = elliptic14_sequence(29).unwrap();
        let expected = [
            1, -1, -2, 1, 0, 2, 1, -1, 1, 0, 0, -2, -4, -1, 0, 1, 6, -1, 2, 0, -2, 0, 0, 2, -5,
            4, 4, 1, -6,
        ];
        let got: Vec<i64> = (1..=29).map(|n| re(&seq, n)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn elliptic_prime_square_recursion() {
        let seq = elliptic14_sequence(200).unwrap();
        let curve = WeierstrassCurve::level14();
        for p in [3u64, 5, 11, 13] {
            let ap = numtheory::curve_ap(&curve, p);
            assert_eq!(re(&seq, (p * p) as usize), ap * ap - p as i64);
        }
        assert_eq!(re(&seq, 4), 1);
        assert_eq!(re(&seq, 49), 1);
        assert_eq!(re(&seq, 6), re(&seq, 2) * re(&seq, 3));
    }

    #[test]
    fn elliptic_cap() {
        assert!(matches!(elliptic14_sequence(ELLIPTIC_MAX_N + 1), Err(Error::Resource(_))));
    }

    #[test]
    fn hecke_small_cases() {
        let values = HashMap::from([(2, -1), (3, 2), (5, 3), (7, 0), (11, 0), (13, 0)]);
        let values = values.into_iter().chain([(17, 0), (19, 0), (23, 0)]).collect();
        let a = hecke_extend(&values, &HashSet::from([2]), 2, 27).unwrap();
        assert_eq!(a[6], -2);
        assert_eq!(a[4], 1);
        assert_eq!(a[8], -1);
        assert_eq!(a[25], 9 - 5);
        assert_eq!(a[9], 4 - 3);
        assert_eq!(a[27], 2 * 1 - 3 * 2);
    }

    #[test]
    fn hecke_missing_prime() {
        let values = HashMap::from([(2, -1)]);
        assert!(matches!(hecke_extend(&values, &HashSet::new(), 2, 3), Err(Error::Input(_))));
    }

    #[test]
    fn theta12_values() {
        let seq = theta12_sequence(200).unwrap();
        assert_eq!(re(&seq, 1), 1);
        assert_eq!(re(&seq, 25), -1);
        assert_eq!(re(&seq, 49), -1);
        assert_eq!(re(&seq, 121), 1);
        assert_eq!(re(&seq, 4), 0);
        assert_eq!(re(&seq, 2), 0);
        assert!(seq.is_cusp_form);
        assert_eq!(seq.growth_exponent, Rational64::new(1, 4));
    }

    #[test]
    fn jacobi_values() {
        let seq = jacobi_theta_sequence(20).unwrap();
        assert_eq!(re(&seq, 0), 1);
        assert_eq!(re(&seq, 4), 2);
        assert_eq!(re(&seq, 3), 0);
        assert_eq!(re(&seq, 16), 2);
        assert!(!seq.is_cusp_form);
    }

    #[test]
    fn harmonic_values() {
        let seq = harmonic_theta_sequence(10).unwrap();
        assert_eq!(re(&seq, 1), 4);
        assert_eq!(re(&seq, 2), -16);
        assert_eq!(re(&seq, 3), 0);
        let poly = BivariatePoly::harmonic_quartic();
        for k in 1..=10u64 {
            assert_eq!(re(&seq, k as usize), numtheory::two_square_weighted_sum(k, &poly).unwrap());
        }
    }

    #[test]
    fn eisenstein_values() {
        let seq = eisenstein_sequence(4, 20).unwrap();
        assert_eq!(re(&seq, 1), 1);
        assert_eq!(re(&seq, 6), 252);
        assert_eq!(re(&seq, 7), 1 + 343);
        assert!(matches!(eisenstein_sequence(5, 10), Err(Error::Input(_))));
        assert!(matches!(eisenstein_sequence(10, 10), Err(Error::Input(_))));
        assert!(eisenstein_sequence(8, 1 << 16).is_ok());
        assert!(matches!(eisenstein_sequence(8, 1 << 20), Err(Error::Overflow(_))));
    }

    #[test]
    fn cusp_classification() {
        let jac = jacobi_theta_sequence(10).unwrap();
        let ell = elliptic14_sequence(10).unwrap();
        let eis = eisenstein_sequence(4, 10).unwrap();
        let kind = |s: &CoefficientSequence, p, q| classify_rational_point(s, p, q).unwrap().kind;
        assert_eq!(kind(&jac, 0, 1), CuspKind::NotCuspidal);
        assert_eq!(kind(&jac, 1, 4), CuspKind::NotCuspidal);
        assert_eq!(kind(&jac, 1, 3), CuspKind::NotCuspidal);
        assert_eq!(kind(&jac, 1, 2), CuspKind::Cuspidal);
        assert_eq!(kind(&jac, 5, 6), CuspKind::Cuspidal);
        assert_eq!(kind(&ell, 3, 7), CuspKind::Cuspidal);
        assert_eq!(kind(&eis, 1, 2), CuspKind::NotCuspidal);
        assert!(classify_rational_point(&jac, 2, 4).is_err());
        let b = classify_rational_point(&jac, 1, 2).unwrap();
        assert!(b.decay_constant_expected);
    }

    #[test]
    fn names_round_trip() {
        for name in SequenceName::ALL {
            assert_eq!(name.to_string().parse::<SequenceName>().unwrap(), name);
        }
        assert!("eisenstein5".parse::<SequenceName>().is_err());
        assert!("nope".parse::<SequenceName>().is_err());
    }

    #[test]
    fn cusp_invariant_enforced() {
        let bad = CoefficientSequence::new(
            "x",
            Complex64::new(1.0, 0.0),
            vec![Complex64::new(1.0, 0.0)],
            Rational64::from_integer(2),
            Rational64::from_integer(1),
            true,
            CuspRule::AllCuspidal,
            Rational64::from_integer(1),
        );
        assert!(bad.is_err());
    }
}
