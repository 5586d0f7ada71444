//! Cyclotomic polynomials and per-order reduction tables.
//!
//! Tables are memoized behind a read-mostly lock. Two threads racing on the
//! same order compute identical data, so the second write is harmless.

use once_cell::sync::Lazy;
use parking_lot::RwLock;
use std::collections::HashMap;
use std::sync::Arc;

/// Reduction data for `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Debug)]
pub(crate) struct Cyclo {
    pub phi: usize,
    /// `x^m mod Φ_n` for `m` in `0..n`, each of length `phi`.
    pub powers: Vec<Vec<i64>>,
}

static TABLES: Lazy<RwLock<HashMap<u64, Arc<Cyclo>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

pub(crate) fn cyclo(n: u64) -> Arc<Cyclo> {
    if let Some(c) = TABLES.read().get(&n) {
        return c.clone();
    }
    let built = Arc::new(build(n));
    TABLES.write().entry(n).or_insert(built).clone()
}

fn build(n: u64) -> Cyclo {
    let poly = cyclotomic_coeffs(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    if phi == 0 {
        unreachable!("cyclotomic polynomial of degree zero");
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow coefficient with Φ_n
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    Cyclo { phi, powers }
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_coeffs(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    // Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}
    let mut num: Vec<i128> = vec![1];
    let mut dens: Vec<u64> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        match mobius(n / d) {
            1 => num = mul_binomial(&num, d),
            -1 => dens.push(d),
            _ => {}
        }
    }
    for d in dens {
        num = div_binomial(&num, d);
    }
    while num.len() > 1 && *num.last().unwrap() == 0 {
        num.pop();
    }
    num.into_iter().map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow")).collect()
}

fn mul_binomial(p: &[i128], d: u64) -> Vec<i128> {
    let d = d as usize;
    let mut out = vec![0i128; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

// exact division by x^d - 1
fn div_binomial(p: &[i128], d: u64) -> Vec<i128> {
    let d = d as usize;
    let deg = p.len() - 1;
    let mut rem = p.to_vec();
    let mut q = vec![0i128; deg + 1 - d];
    for i in (d..=deg).rev() {
        let c = rem[i];
        q[i - d] = c;
        rem[i] -= c;
        rem[i - d] += c;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

pub(crate) fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_coeffs(1), vec![-1, 1]);
        assert_eq!(cyclotomic_coeffs(2), vec![1, 1]);
        assert_eq!(cyclotomic_coeffs(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_coeffs(7), vec![1; 7]);
        assert_eq!(cyclotomic_coeffs(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(cyclotomic_coeffs(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_matches_degree() {
        for n in 1..200 {
            assert_eq!(cyclotomic_coeffs(n).len() as u64 - 1, euler_phi(n), "n={n}");
        }
    }

    #[test]
    fn first_large_coefficient() {
        // Φ_105 is the first with a coefficient of absolute value 2
        let c = cyclotomic_coeffs(105);
        assert_eq!(c.iter().map(|x| x.abs()).max(), Some(2));
    }

    #[test]
    fn power_table_wraps() {
        let c = cyclo(5);
        assert_eq!(c.powers[4], vec![-1, -1, -1, -1]);
        assert_eq!(c.powers[0], vec![1, 0, 0, 0]);
    }
}
