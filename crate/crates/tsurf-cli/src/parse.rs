//! Exact numbers on the command line.
//!
//! A real number is a sum of terms; each term is a rational, or an optional
//! rational factor times `cos(r)`, `sin(r)` or `cot(r)` with the angle `r`
//! given as a rational multiple of π. Examples: `-3/2`, `cot(1/10)`,
//! `1 + 2*cos(2/7)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use tsurf::numfield::{cos_pi, cot_pi, sin_pi, RealCyc};
use tsurf::surface::Mat2;

fn rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn small_fraction(s: &str) -> Result<(i64, i64), String> {
    let r = rational(s)?;
    let n = i64::try_from(r.numer().clone()).map_err(|_| format!("angle {s:?} is too large"))?;
    let d = i64::try_from(r.denom().clone()).map_err(|_| format!("angle {s:?} is too large"))?;
    Ok((n, d))
}

fn atom(s: &str) -> Result<RealCyc, String> {
    let s = s.trim();
    for name in ["cos", "sin", "cot"] {
        if let Some(rest) = s.strip_prefix(name) {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| format!("expected {name}(p/q), got {s:?}"))?;
            let (p, q) = small_fraction(inner)?;
            return match name {
                "cos" => Ok(cos_pi(p, q)),
                "sin" => Ok(sin_pi(p, q)),
                _ => cot_pi(p, q).map_err(|e| format!("cot({inner}): {e}")),
            };
        }
    }
    Ok(RealCyc::from_rational(&rational(s)?))
}

fn term(s: &str) -> Result<RealCyc, String> {
    match s.split_once('*') {
        Some((c, a)) => Ok(atom(a)?.scale(&rational(c)?)),
        None => atom(s),
    }
}

/// Parses a real number.
pub fn real(s: &str) -> Result<RealCyc, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    // split on top-level signs, keeping them with their term
    let mut terms = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'*' && bytes[i - 1] != b'/' => {
                terms.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);
    let mut acc = RealCyc::zero();
    for t in terms {
        let t = t.trim();
        if t.is_empty() {
            continue;
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let v = term(body)?;
        acc = if neg { &acc - &v } else { &acc + &v };
    }
    Ok(acc.reduced())
}

/// Comma-separated list of exactly `n` reals.
pub fn reals(s: &str, n: usize) -> Result<Vec<RealCyc>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {:?}", s));
    }
    parts.into_iter().map(real).collect()
}

pub fn matrix(s: &str) -> Result<Mat2, String> {
    let v = reals(s, 4)?;
    let mut it = v.into_iter();
    Ok(Mat2::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
}

/// `p/q` as a pair of machine integers.
pub fn fraction(s: &str) -> Result<(i64, i64), String> {
    small_fraction(s)
}

/// A 1-based permutation such as `2,3,1`.
pub fn permutation(s: &str) -> Result<Vec<usize>, String> {
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad permutation entry {x:?}"))).collect()
}
