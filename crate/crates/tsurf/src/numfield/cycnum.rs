//! Elements of `Q(ζ_N)` in the reduced power basis.

use super::cyclo::{cyclo, euler_phi, lcm_u64, prime_factors, Cyclo};
use super::linalg::{self, QMat};
use super::trig::{sign_of_sum, Part};
use super::FieldError;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

static JOIN_CAP: AtomicU64 = AtomicU64::new(10_000);

/// Largest cyclotomic order an implicit join may lift to.
pub fn join_cap() -> u64 {
    JOIN_CAP.load(AtomicOrdering::Relaxed)
}

pub fn set_join_cap(cap: u64) {
    JOIN_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

/// `Σ (num_i / den) ζ_N^i` for `i < φ(N)`.
///
/// The numerators and the positive denominator share no common factor, so two
/// values of the same order are equal iff their fields are. Values of
/// different orders compare by lifting to a common order.
#[derive(Clone)]
pub struct CycNum {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(order: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len() as u64, euler_phi(order));
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if num.iter().all(Zero::is_zero) {
            return CycNum { order, num, den: BigInt::one() };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        CycNum { order, num, den }
    }

    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "order must be positive");
        CycNum { order, num: vec![BigInt::zero(); euler_phi(order) as usize], den: BigInt::one() }
    }

    pub fn one(order: u64) -> Self {
        Self::from_int_in(1, order)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_int_in(v, 1)
    }

    pub fn from_int_in(v: i64, order: u64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(v);
        z
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::rational_in(r, 1)
    }

    pub fn rational_in(r: &BigRational, order: u64) -> Self {
        let mut num = vec![BigInt::zero(); euler_phi(order) as usize];
        num[0] = r.numer().clone();
        Self::from_parts(order, num, r.denom().clone())
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::from_rational(&BigRational::new(p.into(), q.into()))
    }

    /// `ζ_N^j` for any integer `j`.
    pub fn zeta(order: u64, j: i64) -> Self {
        let c = cyclo(order);
        let m = j.rem_euclid(order as i64) as usize;
        let num = c.powers[m].iter().map(|&x| BigInt::from(x)).collect();
        CycNum { order, num, den: BigInt::one() }
    }

    /// The imaginary unit in order 4.
    pub fn i() -> Self {
        Self::zeta(4, 1)
    }

    /// From power-basis coefficients; the slice must have length `φ(N)`.
    pub fn from_coeffs(order: u64, coeffs: &[BigRational]) -> Result<Self, FieldError> {
        let phi = euler_phi(order) as usize;
        if coeffs.len() != phi {
            return Err(FieldError::BadLength { order, expected: phi, got: coeffs.len() });
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(order, num, den))
    }

    /// `Σ c_e ζ_N^e` over arbitrary integer exponents.
    pub fn from_powers<I>(order: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<(i64, BigRational)> = terms.into_iter().collect();
        let mut den = BigInt::one();
        for (_, c) in &terms {
            den = den.lcm(c.denom());
        }
        let mut raw = vec![BigInt::zero(); order as usize];
        for (e, c) in &terms {
            raw[e.rem_euclid(order as i64) as usize] += c.numer() * (&den / c.denom());
        }
        let c = cyclo(order);
        Self::from_parts(order, reduce_raw(&c, &raw), den)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Hashable identity of the representation; equal keys mean equal values,
    /// and equal values of the same order have equal keys.
    pub fn key(&self) -> (u64, Vec<BigInt>, BigInt) {
        (self.order, self.num.clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The same element in `Q(ζ_M)`; requires `N | M`.
    pub fn lift(&self, m: u64) -> Result<Self, FieldError> {
        if m == self.order {
            return Ok(self.clone());
        }
        if m == 0 || m % self.order != 0 {
            return Err(FieldError::NotDivisible { from: self.order, to: m });
        }
        let step = m / self.order;
        let mut raw = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                raw[j * step as usize] = c.clone();
            }
        }
        let c = cyclo(m);
        Ok(Self::from_parts(m, reduce_raw(&c, &raw), self.den.clone()))
    }

    fn lift_unchecked(&self, m: u64) -> Self {
        self.lift(m).expect("lift to a multiple of the order")
    }

    /// Representation in the smallest cyclotomic field containing the value.
    pub fn reduced(&self) -> Self {
        if self.is_rational() {
            return Self::rational_in(&self.to_rational().unwrap(), 1);
        }
        let mut cur = self.clone();
        'outer: loop {
            for p in prime_factors(cur.order) {
                if let Some(down) = cur.descend(p) {
                    cur = down;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    // try to express the value in order N/p
    fn descend(&self, p: u64) -> Option<Self> {
        let n = self.order;
        let m = n / p;
        if m % p == 0 {
            // Φ_N(x) = Φ_m(x^p): the subfield has basis ζ_N^{p j}
            if self.num.iter().enumerate().any(|(i, c)| i as u64 % p != 0 && !c.is_zero()) {
                return None;
            }
            let num = self.num.iter().step_by(p as usize).cloned().collect();
            return Some(Self::from_parts(m, num, self.den.clone()));
        }
        // p ∥ N: fixed by every k ≡ 1 mod m, then solve for coordinates
        for k in (1..n).step_by(m as usize).skip(1) {
            if k.gcd(&n) == 1 && &self.galois(k as i64) != self {
                return None;
            }
        }
        let phi_n = self.num.len();
        let phi_m = euler_phi(m) as usize;
        let cols: Vec<CycNum> = (0..phi_m).map(|j| Self::zeta(n, (j as u64 * p) as i64)).collect();
        let a: QMat =
            (0..phi_n).map(|i| cols.iter().map(|c| BigRational::from_integer(c.num[i].clone())).collect()).collect();
        let b: Vec<BigRational> = self.coeffs();
        let x = linalg::solve(&a, &b)?;
        Some(Self::from_coeffs(m, &x).expect("length φ(m)"))
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The automorphism `ζ ↦ ζ^k`; `k` must be a unit mod `N`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        let k = k.rem_euclid(n.max(1));
        let mut raw = vec![BigInt::zero(); self.order as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                raw[((j as i64 * k) % n) as usize] += c;
            }
        }
        let cy = cyclo(self.order);
        Self::from_parts(self.order, reduce_raw(&cy, &raw), self.den.clone())
    }

    fn join<'a>(a: &'a Self, b: &'a Self) -> Result<(Cow<'a, Self>, Cow<'a, Self>), FieldError> {
        if a.order == b.order {
            return Ok((Cow::Borrowed(a), Cow::Borrowed(b)));
        }
        if a.is_rational() {
            return Ok((Cow::Owned(Self::rational_in(&a.to_rational().unwrap(), b.order)), Cow::Borrowed(b)));
        }
        if b.is_rational() {
            return Ok((Cow::Borrowed(a), Cow::Owned(Self::rational_in(&b.to_rational().unwrap(), a.order))));
        }
        let l = lcm_u64(a.order, b.order);
        if l > join_cap() {
            return Err(FieldError::FieldJoinOverflow { left: a.order, right: b.order, cap: join_cap() });
        }
        let la = if a.order == l { Cow::Borrowed(a) } else { Cow::Owned(a.lift_unchecked(l)) };
        let lb = if b.order == l { Cow::Borrowed(b) } else { Cow::Owned(b.lift_unchecked(l)) };
        Ok((la, lb))
    }

    /// Both operands expressed in one order, lifting as needed.
    pub fn to_common(a: &Self, b: &Self) -> Result<(Self, Self), FieldError> {
        let (x, y) = Self::join(a, b)?;
        Ok((x.into_owned(), y.into_owned()))
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| if negate { x * &fa - y * &fb } else { x * &fa + y * &fb })
            .collect();
        Self::from_parts(self.order, num, den)
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        if self.is_rational() {
            return other.scale_parts(&self.num[0], &self.den);
        }
        if other.is_rational() {
            return self.scale_parts(&other.num[0], &other.den);
        }
        let n = self.order as usize;
        let mut raw = vec![BigInt::zero(); n];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    raw[(i + j) % n] += x * y;
                }
            }
        }
        let c = cyclo(self.order);
        Self::from_parts(self.order, reduce_raw(&c, &raw), &self.den * &other.den)
    }

    fn scale_parts(&self, p: &BigInt, q: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * p).collect();
        Self::from_parts(self.order, num, &self.den * q)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        self.scale_parts(r.numer(), r.denom())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale_parts(&BigInt::from(k), &BigInt::one())
    }

    fn inv_same(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_parts(
                self.order,
                {
                    let mut v = vec![BigInt::zero(); self.num.len()];
                    v[0] = self.den.clone();
                    v
                },
                self.num[0].clone(),
            ));
        }
        // columns: numerator-element times ζ^j
        let phi = self.num.len();
        let n = self.order as usize;
        let c = cyclo(self.order);
        let mut a: QMat = vec![Vec::with_capacity(phi); phi];
        for j in 0..phi {
            let mut raw = vec![BigInt::zero(); n];
            for (i, x) in self.num.iter().enumerate() {
                raw[(i + j) % n] += x;
            }
            let col = reduce_raw(&c, &raw);
            for (i, v) in col.into_iter().enumerate() {
                a[i].push(BigRational::from_integer(v));
            }
        }
        let mut e0 = vec![BigRational::zero(); phi];
        e0[0] = BigRational::one();
        let x = linalg::solve(&a, &e0).expect("nonzero field element is invertible");
        let x: Vec<BigRational> = x.into_iter().map(|v| v * BigRational::from_integer(self.den.clone())).collect();
        Self::from_coeffs(self.order, &x)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        let (a, b) = Self::join(self, other)?;
        Ok(a.add_same(&b, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        let (a, b) = Self::join(self, other)?;
        Ok(a.add_same(&b, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let (a, b) = Self::join(self, other)?;
        Ok(a.mul_same(&b))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        let (a, b) = Self::join(self, other)?;
        Ok(a.mul_same(&b.inv_same()?))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        self.inv_same()
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same(&base);
            }
        }
        Ok(acc)
    }

    /// `|z|^2 = z · conj(z)`.
    pub fn norm_sq(&self) -> RealCyc {
        RealCyc(self.mul_same(&self.conj()))
    }

    /// Real part, kept in order `N`.
    pub fn re(&self) -> RealCyc {
        RealCyc(self.add_same(&self.conj(), false).scale(&BigRational::new(1.into(), 2.into())))
    }

    /// Imaginary part. Needs `i`, so the result lives in order `lcm(N, 4)`.
    pub fn im(&self) -> RealCyc {
        let d = self.add_same(&self.conj(), true);
        if d.is_zero() {
            return RealCyc(Self::zero(1));
        }
        let l = lcm_u64(self.order, 4);
        let d = d.lift_unchecked(l);
        // (z - z̄)/(2i) = -i (z - z̄)/2
        let minus_i_half = Self::zeta(l, 3 * (l / 4) as i64).scale(&BigRational::new(1.into(), 2.into()));
        RealCyc(d.mul_same(&minus_i_half))
    }

    /// Sign of the real part under the canonical embedding.
    pub fn re_sign(&self) -> Ordering {
        if self.add_same(&self.conj(), false).is_zero() {
            return Ordering::Equal;
        }
        sign_of_sum(self.order, 1, &self.num, Part::Re)
    }

    /// Sign of the imaginary part under the canonical embedding.
    pub fn im_sign(&self) -> Ordering {
        if self.add_same(&self.conj(), true).is_zero() {
            return Ordering::Equal;
        }
        sign_of_sum(self.order, 1, &self.num, Part::Im)
    }

    /// Double-precision value under the canonical embedding (display only).
    pub fn approx(&self) -> Complex64 {
        self.approx_galois(1)
    }

    pub fn approx_galois(&self, k: i64) -> Complex64 {
        let n = self.order;
        let t = super::trig::float_table(n);
        let k = k.rem_euclid(n as i64) as u64;
        let d = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((j as u64 * k) % n) as usize;
            let cf = BigRational::new(c.clone(), self.den.clone()).to_f64().unwrap_or_else(|| c.to_f64().unwrap() / d);
            re += cf * t.cos[idx];
            im += cf * t.sin[idx];
        }
        Complex64::new(re, im)
    }
}

/// `x^m` rows from the table applied to a length-`N` exponent vector.
pub(crate) fn reduce_raw(c: &Cyclo, raw: &[BigInt]) -> Vec<BigInt> {
    let phi = c.phi;
    let mut out = vec![BigInt::zero(); phi];
    for (m, r) in raw.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        if m < phi {
            out[m] += r;
            continue;
        }
        for (o, &p) in out.iter_mut().zip(&c.powers[m]) {
            if p != 0 {
                *o += r * p;
            }
        }
    }
    out
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        match Self::join(self, other) {
            Ok((a, b)) => a.den == b.den && a.num == b.num,
            Err(_) => {
                let (a, b) = (self.reduced(), other.reduced());
                a.order == b.order && a.den == b.den && a.num == b.num
            }
        }
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{}", self.order, j)?,
                _ => write!(f, "{mag}*z{}^{}", self.order, j)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Binary operations accepted by [`cyc_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
    Conj,
}

/// Strict arithmetic: both operands must already share an order.
pub fn cyc_arith(op: ArithOp, a: &CycNum, b: Option<&CycNum>) -> Result<CycNum, FieldError> {
    let need_b = || b.ok_or(FieldError::MissingOperand);
    let same = |b: &CycNum| {
        if a.order != b.order {
            Err(FieldError::OrderMismatch { left: a.order, right: b.order })
        } else {
            Ok(())
        }
    };
    match op {
        ArithOp::Add => {
            let b = need_b()?;
            same(b)?;
            Ok(a.add_same(b, false))
        }
        ArithOp::Sub => {
            let b = need_b()?;
            same(b)?;
            Ok(a.add_same(b, true))
        }
        ArithOp::Mul => {
            let b = need_b()?;
            same(b)?;
            Ok(a.mul_same(b))
        }
        ArithOp::Inv => a.inv_same(),
        ArithOp::Neg => Ok(-a),
        ArithOp::Conj => Ok(a.conj()),
    }
}

/// `embed_order`: the same element in `Q(ζ_M)`.
pub fn embed_order(a: &CycNum, m: u64) -> Result<CycNum, FieldError> {
    a.lift(m)
}

/// A real element of a cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct RealCyc(CycNum);

impl RealCyc {
    /// Checks `conj(x) = x` exactly.
    pub fn new(x: CycNum) -> Result<Self, FieldError> {
        if x.conj() == x {
            Ok(RealCyc(x))
        } else {
            Err(FieldError::NotReal)
        }
    }

    pub(crate) fn new_unchecked(x: CycNum) -> Self {
        debug_assert!(x.conj() == x);
        RealCyc(x)
    }

    pub fn from_int(v: i64) -> Self {
        RealCyc(CycNum::from_int(v))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        RealCyc(CycNum::frac(p, q))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RealCyc(CycNum::from_rational(r))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn value(&self) -> &CycNum {
        &self.0
    }

    pub fn into_inner(self) -> CycNum {
        self.0
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.0.to_rational()
    }

    pub fn sign(&self) -> Ordering {
        self.0.re_sign()
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(RealCyc(self.0.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        Ok(RealCyc(self.0.pow(e)?))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        RealCyc(self.0.scale(r))
    }

    pub fn reduced(&self) -> Self {
        RealCyc(self.0.reduced())
    }

    pub fn lift(&self, m: u64) -> Result<Self, FieldError> {
        Ok(RealCyc(self.0.lift(m)?))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(RealCyc(self.0.try_add(&o.0)?))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(RealCyc(self.0.try_sub(&o.0)?))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(RealCyc(self.0.try_mul(&o.0)?))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(RealCyc(self.0.try_div(&o.0)?))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.approx().re
    }

    /// The real value as a complex field element.
    pub fn as_complex(&self) -> &CycNum {
        &self.0
    }
}

impl From<RealCyc> for CycNum {
    fn from(r: RealCyc) -> Self {
        r.0
    }
}

impl PartialOrd for RealCyc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealCyc {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0.order == other.0.order && self.0 == other.0 {
            return Ordering::Equal;
        }
        (self - other).sign()
    }
}

impl fmt::Debug for RealCyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealCyc({} ≈ {})", self.0, self.to_f64())
    }
}

impl fmt::Display for RealCyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! forward_real {
    ($tr:ident, $m:ident) => {
        impl $tr<&RealCyc> for &RealCyc {
            type Output = RealCyc;
            fn $m(self, rhs: &RealCyc) -> RealCyc {
                RealCyc((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<RealCyc> for RealCyc {
            type Output = RealCyc;
            fn $m(self, rhs: RealCyc) -> RealCyc {
                RealCyc(self.0.$m(rhs.0))
            }
        }
        impl $tr<&RealCyc> for RealCyc {
            type Output = RealCyc;
            fn $m(self, rhs: &RealCyc) -> RealCyc {
                RealCyc(self.0.$m(&rhs.0))
            }
        }
        impl $tr<RealCyc> for &RealCyc {
            type Output = RealCyc;
            fn $m(self, rhs: RealCyc) -> RealCyc {
                RealCyc((&self.0).$m(rhs.0))
            }
        }
    };
}

forward_real!(Add, add);
forward_real!(Sub, sub);
forward_real!(Mul, mul);
forward_real!(Div, div);

impl Neg for &RealCyc {
    type Output = RealCyc;
    fn neg(self) -> RealCyc {
        RealCyc(-&self.0)
    }
}

impl Neg for RealCyc {
    type Output = RealCyc;
    fn neg(self) -> RealCyc {
        RealCyc(-self.0)
    }
}

/// Sign of a real element: `-1`, `0` or `+1`.
pub fn real_sign(x: &RealCyc) -> i32 {
    match x.sign() {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// `cos(2πp/q)` in order `q`.
pub fn cos2pi(p: i64, q: i64) -> Result<RealCyc, FieldError> {
    if q < 1 {
        return Err(FieldError::DegenerateField { q });
    }
    let half = BigRational::new(1.into(), 2.into());
    let v = CycNum::from_powers(q as u64, [(p, half.clone()), (-p, half)]);
    Ok(RealCyc(v))
}

/// `sin(2πp/q) / sin(2π/q)` as an element of the real subfield of `Q(ζ_q)`.
pub fn sin_ratio(p: i64, q: i64) -> Result<RealCyc, FieldError> {
    if q < 3 {
        return Err(FieldError::DegenerateField { q });
    }
    // (ζ^p - ζ^{-p}) / (ζ - ζ^{-1}) = Σ_{j<p} ζ^{p-1-2j}
    let p = p.rem_euclid(q);
    let terms = (0..p).map(|j| (p - 1 - 2 * j, BigRational::one()));
    Ok(RealCyc(CycNum::from_powers(q as u64, terms)))
}

/// `cos(πp/q)`.
pub fn cos_pi(p: i64, q: i64) -> RealCyc {
    cos2pi(p, 2 * q).expect("positive order")
}

/// `sin(πp/q)`, living in order `lcm(2q, 4)`.
pub fn sin_pi(p: i64, q: i64) -> RealCyc {
    let l = lcm_u64(2 * q as u64, 4);
    let e = p * (l / (2 * q as u64)) as i64;
    let quarter = (l / 4) as i64;
    let half = BigRational::new(1.into(), 2.into());
    // (ζ^e - ζ^{-e}) / (2i) = (ζ^{e - l/4} - ζ^{-e - l/4}) / 2
    let v = CycNum::from_powers(l, [(e - quarter, half.clone()), (-e - quarter, -half)]);
    RealCyc(v)
}

/// `cot(πp/q)` for `p/q` not an integer, in order `lcm(2q, 4)`.
pub fn cot_pi(p: i64, q: i64) -> Result<RealCyc, FieldError> {
    let l = lcm_u64(2 * q as u64, 4);
    let e = p * (l / (2 * q as u64)) as i64;
    let zeta = CycNum::zeta(l, e);
    let zinv = CycNum::zeta(l, -e);
    let i = CycNum::zeta(l, (l / 4) as i64);
    let v = (&i * &(&zeta + &zinv)).try_div(&(&zeta - &zinv))?;
    Ok(RealCyc(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, j: i64) -> CycNum {
        CycNum::zeta(n, j)
    }

    #[test]
    fn roots_of_unity_multiply() {
        assert!((z(5, 1) * z(5, 4)).is_one());
        assert_eq!(z(7, 2).conj(), z(7, 5));
        assert_eq!(z(12, 13), z(12, 1));
    }

    #[test]
    fn lift_and_reduce() {
        assert_eq!(z(5, 1).lift(10).unwrap(), z(10, 2));
        assert_eq!(CycNum::one(1).lift(14).unwrap(), CycNum::one(14));
        let r = z(10, 2).reduced();
        assert_eq!(r.order(), 5);
        assert_eq!(r, z(5, 1));
        let i = z(12, 3).reduced();
        assert_eq!(i.order(), 4);
        assert_eq!(CycNum::from_int_in(3, 20).reduced().order(), 1);
        // -ζ_3 = ζ_6 has conductor 3
        assert_eq!(z(6, 1).reduced().order(), 3);
        assert!(z(9, 1).lift(36).unwrap().reduced().order() == 9);
    }

    #[test]
    fn inverse_is_inverse() {
        let a = z(7, 1) + z(7, 3).scale_int(2) - CycNum::from_int(5);
        let b = a.inv().unwrap();
        assert!((a * b).is_one());
        assert_eq!(CycNum::zero(7).inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn strict_arith_needs_same_order() {
        let r = cyc_arith(ArithOp::Add, &z(5, 1), Some(&z(7, 1)));
        assert!(matches!(r, Err(FieldError::OrderMismatch { .. })));
        let s = cyc_arith(ArithOp::Add, &z(5, 1), Some(&z(5, 1).conj())).unwrap();
        assert!(RealCyc::new(s).is_ok());
    }

    #[test]
    fn join_cap_is_enforced() {
        let a = z(101, 1);
        let b = z(103, 1);
        assert!(matches!(a.try_add(&b), Err(FieldError::FieldJoinOverflow { .. })));
    }

    #[test]
    fn signs() {
        let c = cos2pi(1, 5).unwrap();
        assert!(c.is_positive());
        let d = cos2pi(2, 5).unwrap();
        assert!(d.is_negative());
        assert!((c.clone() - d).is_positive());
        assert_eq!(real_sign(&RealCyc::zero()), 0);
        assert_eq!(z(8, 3).im_sign(), Ordering::Greater);
        assert_eq!(z(8, 5).im_sign(), Ordering::Less);
        assert_eq!(z(8, 2).re_sign(), Ordering::Equal);
    }

    #[test]
    fn trig_values() {
        let s = sin_pi(1, 6);
        assert_eq!(s, RealCyc::frac(1, 2));
        let c = cot_pi(1, 4).unwrap();
        assert!(c.is_one());
        assert!((cot_pi(1, 10).unwrap().to_f64() - (std::f64::consts::PI / 10.0).tan().recip()).abs() < 1e-12);
        assert!(sin_ratio(1, 9).unwrap().is_one());
        assert_eq!(sin_ratio(2, 7).unwrap(), cos2pi(1, 7).unwrap().scale(&BigRational::from_integer(2.into())));
        assert!(matches!(sin_ratio(1, 2), Err(FieldError::DegenerateField { q: 2 })));
    }

    #[test]
    fn real_and_imaginary_parts() {
        let w = z(5, 1);
        let re = w.re();
        let im = w.im();
        let back = re.as_complex() + &(im.as_complex() * &CycNum::i());
        assert_eq!(back, w);
        assert!((im.to_f64() - (0.4 * std::f64::consts::PI).sin()).abs() < 1e-13);
    }
}
