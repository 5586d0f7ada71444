//! Dense integer polynomials, constant term first.

use super::cyclo::cyclotomic_coeffs;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

// integers that fit are emitted as JSON numbers, the rest as decimal strings
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        vals.serialize(s)
    }
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        if c.is_empty() {
            c.push(BigInt::zero());
        }
        IntPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x_minus(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn cyclotomic(n: u64) -> Self {
        Self::from_i64(&cyclotomic_coeffs(n))
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_zero()
    }

    pub fn lead(&self) -> &BigInt {
        self.0.last().unwrap()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() == 1 {
            return Self::from_i64(&[0]);
        }
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Makes the content 1 and the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return self.clone();
        }
        if self.lead().is_negative() {
            g = -g;
        }
        Self::new(self.0.iter().map(|c| c / &g).collect())
    }

    /// Division with remainder over `Q`, scaled back to integers: returns
    /// `(q, r)` when the divisor is monic, otherwise the pseudo-quotient.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let mut r: Vec<BigRational> = self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let dl = BigRational::from_integer(d.lead().clone());
        let dd = d.degree();
        if self.degree() < dd || self.is_zero() {
            return (Self::from_i64(&[0]), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.degree() - dd + 1];
        for i in (dd..=self.degree()).rev() {
            let c = &r[i] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[i - dd + j] -= &c * BigRational::from_integer(dc.clone());
            }
            q[i - dd] = c;
        }
        let to_int = |v: Vec<BigRational>| -> Self {
            let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            Self::new(v.into_iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect())
        };
        (to_int(q), to_int(r[..dd.max(1)].to_vec()))
    }

    /// Exact quotient if `d` divides `self` over `Z[x]` with monic `d`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() && d.lead().is_one() {
            Some(q)
        } else if r.is_zero() {
            // non-monic divisor: check the scaled quotient is consistent
            if q.mul(d) == *self {
                Some(q)
            } else {
                None
            }
        } else {
            None
        }
    }

    /// Primitive gcd over `Q`.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = o.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// `x^d · p(1/x) = p(x)` for `d = deg p`.
    pub fn is_palindromic(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| self.0[i] == self.0[n - 1 - i])
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
    }

    /// Simultaneous root approximation (Aberth–Ehrlich iteration).
    pub fn roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lead = self.lead().to_f64().unwrap();
        let c: Vec<Complex64> = self.0.iter().map(|x| Complex64::new(x.to_f64().unwrap() / lead, 0.0)).collect();
        let dc: Vec<Complex64> = (1..=d).map(|i| c[i] * i as f64).collect();
        let eval = |z: Complex64, p: &[Complex64]| p.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &k| a * z + k);
        // Cauchy bound for the initial circle
        let bound = 1.0 + c[..d].iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(bound * 0.7, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64))
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for k in 0..d {
                let p = eval(z[k], &c);
                let dp = eval(z[k], &dc);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                if w.is_finite() {
                    z[k] -= w;
                    moved = moved.max(w.norm() / (1.0 + z[k].norm()));
                }
            }
            if moved < 1e-16 {
                break;
            }
        }
        z
    }

    /// Root approximations with inclusion radii.
    ///
    /// For a squarefree polynomial of degree `d` the disc of radius
    /// `d·|p(z_k)| / |lc · Π_{j≠k}(z_k - z_j)|` around each `z_k` contains a
    /// root, and disjoint discs contain distinct roots.
    pub fn root_discs(&self) -> Vec<(Complex64, f64)> {
        let z = self.roots();
        let d = z.len();
        let lead = self.lead().to_f64().unwrap();
        (0..d)
            .map(|k| {
                let p = self.eval_c64(z[k]).norm();
                let prod: f64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).norm()).product();
                let r = d as f64 * p / (lead.abs() * prod);
                (z[k], r * (1.0 + 1e-9) + 1e-300)
            })
            .collect()
    }

    /// Removes every cyclotomic factor; returns the remaining polynomial and
    /// the multiset of orders that were divided out.
    pub fn strip_cyclotomic(&self) -> (Self, Vec<u64>) {
        let mut p = self.clone();
        let mut found = Vec::new();
        // a cyclotomic Φ_d dividing p has φ(d) ≤ deg p, hence d ≤ 2 deg² + 2
        let dmax = 2 * (p.degree() as u64).pow(2) + 6;
        for d in 1..=dmax {
            let phi = super::cyclo::euler_phi(d) as usize;
            if phi > p.degree() {
                continue;
            }
            let c = Self::cyclotomic(d);
            while p.degree() >= c.degree() {
                match p.exact_div(&c) {
                    Some(q) => {
                        p = q;
                        found.push(d);
                    }
                    None => break,
                }
            }
        }
        (p, found)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() && !(self.0.len() == 1) {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            match i {
                0 => write!(f, "{mag}")?,
                1 if show_coeff => write!(f, "{mag}x")?,
                1 => write!(f, "x")?,
                _ if show_coeff => write!(f, "{mag}x^{i}")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - M)` of an integer matrix
/// (Faddeev–LeVerrier over `Q`).
pub fn char_poly(m: &[Vec<BigInt>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mq: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect()).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    // M_k = M·M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M M_k)/k
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let c_prev = coeffs[n - k + 1].clone();
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for t in 0..n {
                if mk[t].iter().all(Zero::is_zero) {
                    continue;
                }
                if mq[i][t].is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += &mq[i][t] * &mk[t][j];
                }
            }
            next[i][i] += &c_prev;
        }
        mk = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &mq[i][t] * &mk[t][i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    IntPoly::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bm(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn charpoly_small() {
        let m = bm(&[&[2, 1], &[1, 1]]);
        assert_eq!(char_poly(&m), IntPoly::from_i64(&[1, -3, 1]));
        let rot = bm(&[&[0, -1], &[1, 0]]);
        assert_eq!(char_poly(&rot), IntPoly::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn gcd_and_division() {
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let b = IntPoly::from_i64(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[1, 1]));
        let (q, r) = a.div_rem(&IntPoly::x_minus(1));
        assert_eq!(q, IntPoly::from_i64(&[1, 1]));
        assert!(r.is_zero());
        assert!(!b.is_squarefree());
    }

    #[test]
    fn cyclotomic_stripping() {
        let p = IntPoly::cyclotomic(5).mul(&IntPoly::cyclotomic(1).pow(2)).mul(&IntPoly::from_i64(&[1, -3, 1]));
        let (rest, found) = p.strip_cyclotomic();
        assert_eq!(rest, IntPoly::from_i64(&[1, -3, 1]));
        assert_eq!(found, vec![1, 1, 5]);
    }

    #[test]
    fn roots_of_golden() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let mut r: Vec<f64> = p.roots().iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        for (z, rad) in p.root_discs() {
            assert!(rad < 1e-10, "{z} {rad}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[-1, 2, 4]).to_string(), "4x^2 + 2x - 1");
        assert_eq!(IntPoly::from_i64(&[0]).to_string(), "0");
    }
}
