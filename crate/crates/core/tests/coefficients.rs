mod common;

use fracmod::modcoeffs::{
    eisenstein_sequence, elliptic14_sequence, harmonic_theta_sequence, jacobi_theta_sequence, read_cache,
    theta12_sequence, write_cache, SequenceName,
};
use fracmod::Complex64;

use common::*;

fn reals(v: &[i64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect()
}

#[test]
fn elliptic_traces_match_point_counts() {
    let e = elliptic14_sequence(500).unwrap();
    for p in (3..500u64).filter(|&p| naive_is_prime(p) && p != 7) {
        let count = naive_point_count([1, 0, 1, 4, -6], p as i64);
        assert_eq!(e.coeff(p as usize).re as i64, p as i64 + 1 - count, "p = {p}");
    }
}

#[test]
fn elliptic_prime_power_recursion() {
    let e = elliptic14_sequence(4096).unwrap();
    let a = |n: usize| e.coeff(n).re as i64;
    for p in [3usize, 5, 11, 13] {
        let mut q = p;
        while q * p <= 4096 {
            assert_eq!(a(q * p), a(p) * a(q) - p as i64 * a(q / p), "p = {p}, p^k = {q}");
            q *= p;
        }
    }
    // bad primes: a_{p^k} = a_p^k
    assert_eq!(a(2), -1);
    assert_eq!(a(7), 1);
    assert_eq!(a(8), -1);
    assert_eq!(a(49), 1);
}

#[test]
fn theta_sequences_match_lattice_oracles() {
    let n = 1000;
    let terms = |s: fracmod::modcoeffs::CoefficientSequence| (0..=n).map(|k| s.coeff(k)).collect::<Vec<_>>();
    assert_eq!(terms(theta12_sequence(n).unwrap()), reals(&theta12_oracle(n)));
    assert_eq!(terms(jacobi_theta_sequence(n).unwrap()), reals(&jacobi_oracle(n)));
    assert_eq!(terms(harmonic_theta_sequence(n).unwrap()), reals(&harmonic_oracle(n)));
}

#[test]
fn eisenstein_matches_divisor_sums() {
    for k in [4u32, 6, 8] {
        let s = eisenstein_sequence(k, 1000).unwrap();
        for n in 1..=1000 {
            assert_eq!(s.coeff(n).re, sigma_oracle(k - 1, n as u64) as f64, "k = {k}, n = {n}");
        }
        assert!(s.a0.re != 0.0 && !s.is_cusp_form);
    }
}

#[test]
fn cache_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    for name in SequenceName::ALL {
        let seq = name.generate(300).unwrap();
        let path = dir.path().join(format!("{name}.coeffs"));
        write_cache(&seq, &path).unwrap();
        assert_eq!(read_cache(&path).unwrap(), seq, "{name}");
    }
}
