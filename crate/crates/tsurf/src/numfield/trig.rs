//! Fixed-point values of `cos(2πj/n)` and `sin(2πj/n)` and the staged sign
//! filter built on them.
//!
//! A table at precision `p` stores `round(2^p · cos(2πj/n))` with absolute
//! error at most 2 units in the last place. Entries are computed with 32 guard
//! bits from a Machin-formula `π` and a Taylor series on `|θ| ≤ π/4`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

const GUARD: u32 = 32;

#[derive(Debug)]
pub(crate) struct TrigTable {
    pub cos: Vec<BigInt>,
    pub sin: Vec<BigInt>,
}

#[derive(Debug)]
pub(crate) struct TrigF64 {
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

static FIXED: Lazy<RwLock<HashMap<(u64, u32), Arc<TrigTable>>>> = Lazy::new(|| RwLock::new(HashMap::new()));
static FLOAT: Lazy<RwLock<HashMap<u64, Arc<TrigF64>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

pub(crate) fn fixed_table(n: u64, bits: u32) -> Arc<TrigTable> {
    if let Some(t) = FIXED.read().get(&(n, bits)) {
        return t.clone();
    }
    let built = Arc::new(build_fixed(n, bits));
    FIXED.write().entry((n, bits)).or_insert(built).clone()
}

pub(crate) fn float_table(n: u64) -> Arc<TrigF64> {
    if let Some(t) = FLOAT.read().get(&n) {
        return t.clone();
    }
    let mut cos = Vec::with_capacity(n as usize);
    let mut sin = Vec::with_capacity(n as usize);
    for j in 0..n {
        let (c, s) = unit_f64(j, n);
        cos.push(c);
        sin.push(s);
    }
    let built = Arc::new(TrigF64 { cos, sin });
    FLOAT.write().entry(n).or_insert(built).clone()
}

/// `(cos, sin)` of `2πj/n` in double precision, using quarter-turn symmetry so
/// the libm argument stays within `[-π/4, π/4]`.
pub(crate) fn unit_f64(j: u64, n: u64) -> (f64, f64) {
    let t = j % n;
    let k = (8 * t + n) / (2 * n);
    let num = 4 * t as i64 - (k * n) as i64;
    let theta = std::f64::consts::PI * num as f64 / (2 * n) as f64;
    let (s, c) = theta.sin_cos();
    match k % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

fn atan_inv(x: u64, q: u32) -> BigInt {
    let one = BigInt::from(1) << q;
    let x2 = BigInt::from(x * x);
    let mut term = &one / BigInt::from(x);
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term = &term / &x2;
        if term.is_zero() {
            break;
        }
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(q: u32) -> BigInt {
    // π = 16 atan(1/5) - 4 atan(1/239)
    atan_inv(5, q) * 16 - atan_inv(239, q) * 4
}

fn build_fixed(n: u64, bits: u32) -> TrigTable {
    let q = bits + GUARD;
    let pi = pi_fixed(q + 8) >> 8u32;
    let mut cos = Vec::with_capacity(n as usize);
    let mut sin = Vec::with_capacity(n as usize);
    let half = BigInt::from(1) << (GUARD - 1);
    for j in 0..n {
        let k = (8 * j + n) / (2 * n);
        let num = 4 * j as i64 - (k * n) as i64;
        let theta = &pi * BigInt::from(num) / BigInt::from(2 * n);
        let (c, s) = taylor(&theta, q);
        let (c, s) = match k % 4 {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        };
        cos.push((c + &half) >> GUARD);
        sin.push((s + &half) >> GUARD);
    }
    TrigTable { cos, sin }
}

fn taylor(theta: &BigInt, q: u32) -> (BigInt, BigInt) {
    let one = BigInt::from(1) << q;
    let x2 = (theta * theta) >> q;
    let mut c_sum = one.clone();
    let mut term = one;
    let mut k: u64 = 1;
    loop {
        term = ((&term * &x2) >> q) / BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            c_sum -= &term;
        } else {
            c_sum += &term;
        }
        k += 1;
    }
    let mut s_sum = theta.clone();
    let mut term = theta.clone();
    let mut k: u64 = 1;
    loop {
        term = ((&term * &x2) >> q) / BigInt::from((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            s_sum -= &term;
        } else {
            s_sum += &term;
        }
        k += 1;
    }
    (c_sum, s_sum)
}

/// Which trigonometric weight the filter applies to coefficient `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Part {
    Re,
    Im,
}

/// Sign of `Σ num_j · f(2π·k·j/n)` where `f` is cos or sin.
///
/// The caller must have excluded an exact zero; the precision loop would
/// otherwise never terminate, so it is capped and panics as a bug check.
pub(crate) fn sign_of_sum(n: u64, k: u64, num: &[BigInt], part: Part) -> Ordering {
    if let Some(s) = float_stage(n, k, num, part) {
        return s;
    }
    let abs_sum: BigInt = num.iter().map(|c| c.abs()).sum();
    let bound = &abs_sum * 2;
    let mut bits = 128u32;
    loop {
        let table = fixed_table(n, bits);
        let vals = match part {
            Part::Re => &table.cos,
            Part::Im => &table.sin,
        };
        let mut total = BigInt::zero();
        for (j, c) in num.iter().enumerate() {
            if !c.is_zero() {
                total += c * &vals[((j as u64 * k) % n) as usize];
            }
        }
        if total.abs() > bound {
            return if total.is_positive() { Ordering::Greater } else { Ordering::Less };
        }
        bits *= 2;
        assert!(bits <= 1 << 20, "sign filter failed to separate a nonzero value from zero");
    }
}

fn float_stage(n: u64, k: u64, num: &[BigInt], part: Part) -> Option<Ordering> {
    let table = float_table(n);
    let vals = match part {
        Part::Re => &table.cos,
        Part::Im => &table.sin,
    };
    let mut total = 0.0f64;
    let mut mag = 0.0f64;
    let mut terms = 0usize;
    for (j, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cf = c.to_f64()?;
        if !cf.is_finite() || cf.abs() > 1e290 {
            return None;
        }
        total += cf * vals[((j as u64 * k) % n) as usize];
        mag += cf.abs();
        terms += 1;
    }
    // table entries are within 4e-15 of the truth; conversion, products and
    // the running sum each add at most one rounding per term
    let err = mag * (4e-15 + (terms as f64 + 3.0) * 2.3e-16) * 1.01;
    if total.abs() > 2.0 * err {
        Some(if total > 0.0 { Ordering::Greater } else { Ordering::Less })
    } else {
        None
    }
}
