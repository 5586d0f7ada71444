use crate::numfield::{cos2pi, lcm_u64, sin_pi, CycNum, FieldError, RealCyc};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A real 2×2 matrix `(a b; c d)` acting on `C = R²`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: RealCyc,
    pub b: RealCyc,
    pub c: RealCyc,
    pub d: RealCyc,
}

impl Mat2 {
    pub fn new(a: RealCyc, b: RealCyc, c: RealCyc, d: RealCyc) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(RealCyc::from_int(a), RealCyc::from_int(b), RealCyc::from_int(c), RealCyc::from_int(d))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    /// Counter-clockwise rotation by `2πp/q`.
    pub fn rotation(p: i64, q: i64) -> Self {
        let c = cos2pi(p, q).expect("positive denominator");
        let s = sin_pi(2 * p, q);
        Mat2::new(c.clone(), -&s, s, c)
    }

    pub fn diag(a: RealCyc, d: RealCyc) -> Self {
        Mat2::new(a, RealCyc::zero(), RealCyc::zero(), d)
    }

    pub fn try_mul(&self, o: &Mat2) -> Result<Mat2, FieldError> {
        let e = |x: &RealCyc, y: &RealCyc, z: &RealCyc, w: &RealCyc| -> Result<RealCyc, FieldError> {
            x.try_mul(y)?.try_add(&z.try_mul(w)?)
        };
        Ok(Mat2 {
            a: e(&self.a, &o.a, &self.b, &o.c)?,
            b: e(&self.a, &o.b, &self.b, &o.d)?,
            c: e(&self.c, &o.a, &self.d, &o.c)?,
            d: e(&self.c, &o.b, &self.d, &o.d)?,
        })
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn det(&self) -> RealCyc {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> RealCyc {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn inverse(&self) -> Result<Mat2, FieldError> {
        let det = self.det();
        if det.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let inv = det.inv()?;
        Ok(Mat2::new(&self.d * &inv, -(&self.b * &inv), -(&self.c * &inv), &self.a * &inv))
    }

    pub fn pow(&self, e: u32) -> Mat2 {
        (0..e).fold(Mat2::identity(), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    /// Every entry in one order (the lcm of the entries' orders).
    pub fn common_order(&self) -> u64 {
        [&self.a, &self.b, &self.c, &self.d].iter().fold(1, |acc, x| lcm_u64(acc, x.order()))
    }

    /// `A·z = αz + βz̄` with `α = ((a+d) + i(c-b))/2`, `β = ((a-d) + i(c+b))/2`.
    pub fn alpha_beta(&self) -> Result<(CycNum, CycNum), FieldError> {
        let i = CycNum::i();
        let half = BigRational::new(1.into(), 2.into());
        let alpha = self
            .a
            .value()
            .try_add(self.d.value())?
            .try_add(&i.try_mul(&self.c.value().try_sub(self.b.value())?)?)?
            .scale(&half);
        let beta = self
            .a
            .value()
            .try_sub(self.d.value())?
            .try_add(&i.try_mul(&self.c.value().try_add(self.b.value())?)?)?
            .scale(&half);
        Ok((alpha, beta))
    }

    /// The image of a point of the plane.
    pub fn apply(&self, z: &CycNum) -> Result<CycNum, FieldError> {
        let (alpha, beta) = self.alpha_beta()?;
        alpha.try_mul(z)?.try_add(&beta.try_mul(&z.conj())?)
    }

    pub fn det_sign(&self) -> Ordering {
        self.det().sign()
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [[self.a.to_f64(), self.b.to_f64()], [self.c.to_f64(), self.d.to_f64()]]
    }

    pub fn entries(&self) -> [&RealCyc; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn reduced(&self) -> Mat2 {
        Mat2::new(self.a.reduced(), self.b.reduced(), self.c.reduced(), self.d.reduced())
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.to_f64();
        write!(f, "Mat2[[{:.6}, {:.6}], [{:.6}, {:.6}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}
