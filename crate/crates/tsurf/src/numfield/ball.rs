//! Certified numeric enclosures of field elements.
//!
//! [`ComplexBall`] is the cheap double-precision filter; [`MpBall`] and
//! [`MpComplex`] carry arbitrary precision as fixed-point integers with an
//! error radius counted in units of `2^-prec`.

use super::cyclo::gcd_u64;
use super::cycnum::CycNum;
use super::trig::fixed_table;
use super::FieldError;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// A disc in `C` known to contain the true value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexBall {
    pub center: Complex64,
    pub radius: f64,
}

impl ComplexBall {
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    pub fn excludes_zero(&self) -> bool {
        self.center.norm() > self.radius
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        (self.center - other.center).norm() <= self.radius + other.radius
    }
}

fn up(x: f64) -> f64 {
    // one rounding step up plus room for the rounding of `x` itself
    x * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE
}

fn check_unit(order: u64, k: i64) -> Result<u64, FieldError> {
    let kk = k.rem_euclid(order as i64) as u64;
    if gcd_u64(kk, order) != 1 && order > 1 {
        return Err(FieldError::BadEmbedding { k, order });
    }
    Ok(kk)
}

// Σ num_j · table[(j k) mod n] for both parts; the error is at most
// 2 Σ|num_j| units of 2^-bits in each part.
fn fixed_sum(a: &CycNum, k: u64, bits: u32) -> (BigInt, BigInt, BigInt) {
    let n = a.order();
    let t = fixed_table(n, bits);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut abs = BigInt::zero();
    for (j, c) in a.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let idx = ((j as u64 * k) % n) as usize;
        re += c * &t.cos[idx];
        im += c * &t.sin[idx];
        abs += c.abs();
    }
    (re, im, abs * 2)
}

/// Enclosure of `σ_k(a)`, where `σ_k : ζ_N ↦ exp(2πik/N)`.
///
/// The center is a double, so the radius cannot be smaller than the rounding
/// of the center; `bits` above 52 only tightens the contribution of the
/// trigonometric tables. See [`embed_mp`] for higher precision.
pub fn embed(a: &CycNum, k: i64, bits: u32) -> Result<ComplexBall, FieldError> {
    let k = check_unit(a.order(), k)?;
    let target = bits.clamp(1, 52);
    let re_zero = a.re_sign().is_eq();
    let im_zero = a.im_sign().is_eq();
    let mut prec = 96u32 + a.numerators().iter().map(|c| c.bits() as u32).max().unwrap_or(0);
    loop {
        let (re, im, err) = fixed_sum(a, k, prec);
        let scale = a.denominator() << prec;
        let part = |v: &BigInt, zero: bool| -> (f64, f64) {
            if zero {
                return (0.0, 0.0);
            }
            let exact = BigRational::new(v.clone(), scale.clone());
            let c = exact.to_f64().unwrap_or(0.0);
            let back = BigRational::from_f64(c).unwrap_or_else(BigRational::zero);
            let conv = (exact - back).abs().to_f64().unwrap_or(f64::INFINITY);
            let table = BigRational::new(err.clone(), scale.clone()).to_f64().unwrap_or(f64::INFINITY);
            (c, up(conv + table))
        };
        let (cr, rr) = part(&re, re_zero);
        let (ci, ri) = part(&im, im_zero);
        let center = Complex64::new(cr, ci);
        let radius = up(rr + ri);
        let limit = center.norm() * 2f64.powi(1 - target as i32);
        if radius <= limit || center.norm() == 0.0 && radius == 0.0 || prec > 4096 {
            return Ok(ComplexBall { center, radius });
        }
        prec *= 2;
    }
}

/// A real interval `[mid - rad, mid + rad] · 2^-prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpBall {
    pub mid: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

fn round_shift(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let half = BigInt::from(1) << (s - 1);
    (x + half) >> s
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

impl MpBall {
    pub fn exact_int(v: i64, prec: u32) -> Self {
        MpBall { mid: BigInt::from(v) << prec, rad: BigInt::zero(), prec }
    }

    pub fn zero(prec: u32) -> Self {
        MpBall { mid: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let scaled = r.numer() << prec;
        let (q, rem) = scaled.div_rem(r.denom());
        let rad = if rem.is_zero() { BigInt::zero() } else { BigInt::from(1) };
        MpBall { mid: q, rad, prec }
    }

    pub fn is_positive(&self) -> bool {
        self.mid > self.rad
    }

    pub fn is_negative(&self) -> bool {
        -&self.mid > self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// Lower bound of the absolute value, in ulps (zero if the ball meets 0).
    pub fn abs_lower(&self) -> BigInt {
        let a = self.mid.abs();
        if a > self.rad {
            a - &self.rad
        } else {
            BigInt::zero()
        }
    }

    pub fn mid_f64(&self) -> f64 {
        BigRational::new(self.mid.clone(), BigInt::from(1) << self.prec).to_f64().unwrap_or(f64::NAN)
    }

    pub fn rad_f64(&self) -> f64 {
        up(BigRational::new(self.rad.clone(), BigInt::from(1) << self.prec).to_f64().unwrap_or(f64::INFINITY))
    }

    fn same_prec(&self, o: &Self) {
        assert_eq!(self.prec, o.prec, "mixed precisions");
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    /// Division; `None` when the divisor contains zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        self.same_prec(o);
        let mb = o.mid.abs();
        if mb <= o.rad {
            return None;
        }
        let p = self.prec;
        let num = &self.mid << p;
        let (q, r) = num.div_rem(&o.mid);
        // round to nearest
        let mid = if (r.abs() << 1u32) >= mb {
            q + if (num.is_negative()) ^ (o.mid.is_negative()) { -1 } else { 1 }
        } else {
            q
        };
        let e_num = (&self.rad * &mb + self.mid.abs() * &o.rad) << p;
        let e_den = &mb * (&mb - &o.rad);
        let rad = ceil_div(&e_num, &e_den) + 1;
        Some(MpBall { mid, rad, prec: p })
    }
}

impl Add for &MpBall {
    type Output = MpBall;
    fn add(self, o: &MpBall) -> MpBall {
        self.same_prec(o);
        MpBall { mid: &self.mid + &o.mid, rad: &self.rad + &o.rad, prec: self.prec }
    }
}

impl Sub for &MpBall {
    type Output = MpBall;
    fn sub(self, o: &MpBall) -> MpBall {
        self.same_prec(o);
        MpBall { mid: &self.mid - &o.mid, rad: &self.rad + &o.rad, prec: self.prec }
    }
}

impl Neg for &MpBall {
    type Output = MpBall;
    fn neg(self) -> MpBall {
        MpBall { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }
}

impl Mul for &MpBall {
    type Output = MpBall;
    fn mul(self, o: &MpBall) -> MpBall {
        self.same_prec(o);
        let p = self.prec;
        let mid = round_shift(&(&self.mid * &o.mid), p);
        let e = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        let rad = ceil_div(&e, &(BigInt::from(1) << p)) + 1;
        MpBall { mid, rad, prec: p }
    }
}

/// A rectangle `re + i·im` of two real balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpComplex {
    pub re: MpBall,
    pub im: MpBall,
}

impl MpComplex {
    pub fn zero(prec: u32) -> Self {
        MpComplex { re: MpBall::zero(prec), im: MpBall::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        MpComplex { re: MpBall::exact_int(1, prec), im: MpBall::zero(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn conj(&self) -> Self {
        MpComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sq(&self) -> MpBall {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Quotient through the conjugate; `None` if `|o|²` may vanish.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = o.norm_sq();
        let t = self * &o.conj();
        Some(MpComplex { re: t.re.div(&n)?, im: t.im.div(&n)? })
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.mid_f64(), self.im.mid_f64())
    }

    /// Upper bound on `|z - mid|`.
    pub fn radius_f64(&self) -> f64 {
        up(self.re.rad_f64() + self.im.rad_f64())
    }
}

impl Add for &MpComplex {
    type Output = MpComplex;
    fn add(self, o: &MpComplex) -> MpComplex {
        MpComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &MpComplex {
    type Output = MpComplex;
    fn sub(self, o: &MpComplex) -> MpComplex {
        MpComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex { re: -&self.re, im: -&self.im }
    }
}

impl Mul for &MpComplex {
    type Output = MpComplex;
    fn mul(self, o: &MpComplex) -> MpComplex {
        MpComplex { re: &(&self.re * &o.re) - &(&self.im * &o.im), im: &(&self.re * &o.im) + &(&self.im * &o.re) }
    }
}

/// Enclosure of `σ_k(a)` with radius in units of `2^-prec`.
pub fn embed_mp(a: &CycNum, k: i64, prec: u32) -> Result<MpComplex, FieldError> {
    let k = check_unit(a.order(), k)?;
    let guard = 16 + a.numerators().iter().map(|c| c.bits() as u32).max().unwrap_or(0);
    let q = prec + guard;
    let (re, im, err) = fixed_sum(a, k, q);
    let den = a.denominator() << guard;
    let conv = |v: BigInt| -> MpBall {
        let (qt, r) = v.div_rem(&den);
        let mid = if (r.abs() << 1u32) >= den { qt + if v.is_negative() { -1 } else { 1 } } else { qt };
        let rad = ceil_div(&err, &den) + 1;
        MpBall { mid, rad, prec }
    };
    Ok(MpComplex { re: conv(re), im: conv(im) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::cycnum::cos2pi;

    #[test]
    fn embed_i() {
        let b = embed(&CycNum::zeta(4, 1), 1, 53).unwrap();
        assert!(b.contains(Complex64::new(0.0, 1.0)));
        assert!(b.radius <= 1e-15);
    }

    #[test]
    fn golden_conjugates() {
        let x = cos2pi(1, 5).unwrap().scale(&BigRational::from_integer(2.into()));
        let b1 = embed(x.value(), 1, 53).unwrap();
        let b2 = embed(x.value(), 2, 53).unwrap();
        let s5 = 5f64.sqrt();
        assert!((b1.center.re - (s5 - 1.0) / 2.0).abs() < 1e-15);
        assert!((b2.center.re + (s5 + 1.0) / 2.0).abs() < 1e-15);
        assert!(matches!(embed(x.value(), 5, 53), Err(FieldError::BadEmbedding { .. })));
    }

    #[test]
    fn mp_arithmetic_encloses() {
        let p = 128;
        let a = embed_mp(&CycNum::zeta(7, 1), 1, p).unwrap();
        let b = embed_mp(&CycNum::zeta(7, 3), 1, p).unwrap();
        let prod = &a * &b;
        let direct = embed_mp(&CycNum::zeta(7, 4), 1, p).unwrap();
        let d = &prod - &direct;
        assert!(d.contains_zero());
        let q = prod.div(&b).unwrap();
        assert!((&q - &a).contains_zero());
        assert!(q.radius_f64() < 1e-30);
    }

    #[test]
    fn mp_precision_scales() {
        let x = CycNum::zeta(9, 2) + CycNum::zeta(9, 5).scale_int(3);
        let lo = embed_mp(&x, 2, 64).unwrap().radius_f64();
        let hi = embed_mp(&x, 2, 128).unwrap().radius_f64();
        assert!(hi <= lo / 2.0);
    }
}
