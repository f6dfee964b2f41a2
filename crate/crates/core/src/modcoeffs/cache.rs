//! Plain-text coefficient cache.
//!
//! ```text
//! # name weight gamma cusp_form N
//! 0	re	im        (only when a_0 ≠ 0)
//! 1	re	im
//! ...
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use num_rational::Rational64;

use super::{CoefficientSequence, CuspRule, SequenceName};
use crate::error::{Error, Result};
use crate::report::write_atomic;

fn format_rational(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::Format(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn render_cache(seq: &CoefficientSequence) -> String {
    let mut out = String::with_capacity(16 * seq.len() + 64);
    let _ = writeln!(
        out,
        "# {} {} {} {} {}",
        seq.name,
        format_rational(seq.weight),
        format_rational(seq.growth_exponent),
        seq.is_cusp_form,
        seq.len()
    );
    if seq.a0 != Complex64::default() {
        let _ = writeln!(out, "0\t{}\t{}", seq.a0.re, seq.a0.im);
    }
    for (i, a) in seq.terms().iter().enumerate() {
        let _ = writeln!(out, "{}\t{}\t{}", i + 1, a.re, a.im);
    }
    out
}

pub fn write_cache(seq: &CoefficientSequence, path: &Path) -> Result<()> {
    write_atomic(path, render_cache(seq).as_bytes())
}

/// Reads a cache file. Metadata not stored in the header (cusp rule and
/// convergence threshold) comes from the built-in sequence of the same name;
/// unknown names get the rule implied by `cusp_form` and threshold `γ`.
pub fn read_cache(path: &Path) -> Result<CoefficientSequence> {
    let text = fs::read_to_string(path)?;
    parse_cache(&text)
}

pub fn parse_cache(text: &str) -> Result<CoefficientSequence> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Format("empty cache file".into()))?;
    let fields: Vec<&str> = header
        .strip_prefix('#')
        .ok_or_else(|| Error::Format("missing header".into()))?
        .split_whitespace()
        .collect();
    let [name, weight, gamma, cusp, n] = fields[..] else {
        return Err(Error::Format(format!("header has {} fields, expected 5", fields.len())));
    };
    let weight = parse_rational(weight)?;
    let gamma = parse_rational(gamma)?;
    let is_cusp_form: bool =
        cusp.parse().map_err(|_| Error::Format(format!("bad cusp flag `{cusp}`")))?;
    let n: usize = n.parse().map_err(|_| Error::Format(format!("bad length `{n}`")))?;

    let mut a0 = Complex64::default();
    let mut terms = Vec::with_capacity(n);
    for (lineno, line) in lines.enumerate() {
        let mut parts = line.split('\t');
        let (Some(idx), Some(re), Some(im), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::Format(format!("line {}: expected 3 fields", lineno + 2)));
        };
        let bad = || Error::Format(format!("line {}: unparsable record", lineno + 2));
        let idx: usize = idx.parse().map_err(|_| bad())?;
        let value = Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?);
        if idx == 0 && terms.is_empty() {
            a0 = value;
        } else if idx == terms.len() + 1 {
            terms.push(value);
        } else {
            return Err(Error::Format(format!("line {}: index {idx} out of order", lineno + 2)));
        }
    }
    if terms.len() != n {
        return Err(Error::Format(format!("header says {n} terms, found {}", terms.len())));
    }
    let (rule, threshold) = match name.parse::<SequenceName>().and_then(|s| s.generate(1)) {
        Ok(reference) => (reference.cusp_rule, reference.convergence_threshold),
        Err(_) if is_cusp_form => (CuspRule::AllCuspidal, gamma),
        Err(_) => (CuspRule::FullModularNoncuspidal, gamma),
    };
    CoefficientSequence::new(name, a0, terms, weight, gamma, is_cusp_form, rule, threshold)
}

fn cache_path(dir: &Path, name: SequenceName) -> PathBuf {
    dir.join(format!("{name}.coeffs"))
}

/// Returns `name` with `n` terms, reusing `dir/<name>.coeffs` when it holds at
/// least `n` terms and regenerating (and rewriting the cache) otherwise.
pub fn load_or_generate(name: SequenceName, n: usize, dir: Option<&Path>) -> Result<CoefficientSequence> {
    let Some(dir) = dir else {
        return name.generate(n);
    };
    let path = cache_path(dir, name);
    if path.exists() {
        if let Ok(seq) = read_cache(&path) {
            if seq.len() >= n {
                return seq.truncated(n);
            }
        }
    }
    let seq = name.generate(n)?;
    fs::create_dir_all(dir)?;
    write_cache(&seq, &path)?;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcoeffs::{eisenstein_sequence, jacobi_theta_sequence, theta12_sequence};

    #[test]
    fn round_trip_preserves_everything() {
        for seq in [
            theta12_sequence(50).unwrap(),
            jacobi_theta_sequence(50).unwrap(),
            eisenstein_sequence(6, 50).unwrap(),
        ] {
            let text = render_cache(&seq);
            assert_eq!(parse_cache(&text).unwrap(), seq);
            assert_eq!(render_cache(&parse_cache(&text).unwrap()), text);
        }
    }

    #[test]
    fn header_and_rows() {
        let text = render_cache(&theta12_sequence(30).unwrap());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# theta12 1/2 1/4 true 30"));
        let nonzero: Vec<&str> = lines.filter(|l| !l.contains("\t0\t")).collect();
        assert_eq!(nonzero, ["1\t1\t0", "25\t-1\t0"]);
        let jac = render_cache(&jacobi_theta_sequence(4).unwrap());
        assert!(jac.lines().nth(1).unwrap().starts_with("0\t1\t"));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_cache("").is_err());
        assert!(parse_cache("# a 1 1 true").is_err());
        assert!(parse_cache("# a 1 1/2 true 2\n1\t1\t0\n").is_err());
        assert!(parse_cache("# a 1 1/2 true 2\n2\t1\t0\n1\t1\t0\n").is_err());
        assert!(parse_cache("# a 1 1/2 true 1\n1\tx\t0\n").is_err());
    }

    #[test]
    fn load_or_generate_reuses_cache() {
        let dir = tempfile::tempdir().unwrap();
        let a = load_or_generate(SequenceName::Theta12, 100, Some(dir.path())).unwrap();
        let path = dir.path().join("theta12.coeffs");
        let first = fs::read(&path).unwrap();
        let b = load_or_generate(SequenceName::Theta12, 40, Some(dir.path())).unwrap();
        assert_eq!(b, a.truncated(40).unwrap());
        assert_eq!(fs::read(&path).unwrap(), first);
    }
}
