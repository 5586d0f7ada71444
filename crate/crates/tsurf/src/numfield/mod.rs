//! Exact arithmetic in cyclotomic fields and their real subfields.

mod ball;
mod cyclo;
mod cycnum;
pub mod linalg;
mod poly;
mod serde_impl;
mod trig;

pub use ball::{embed, embed_mp, ComplexBall, MpBall, MpComplex};
pub use cyclo::{cyclotomic_coeffs, euler_phi, gcd_u64, lcm_u64};
pub use cycnum::{
    cos2pi, cos_pi, cot_pi, cyc_arith, embed_order, join_cap, real_sign, set_join_cap, sin_pi, sin_ratio, ArithOp,
    CycNum, RealCyc,
};
pub use poly::{char_poly, IntPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands have different orders {left} and {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("order {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("joining orders {left} and {right} exceeds the cap {cap}")]
    FieldJoinOverflow { left: u64, right: u64, cap: u64 },
    #[error("k = {k} is not a unit modulo {order}")]
    BadEmbedding { k: i64, order: u64 },
    #[error("degenerate field for q = {q}")]
    DegenerateField { q: i64 },
    #[error("order {order} needs {expected} coefficients, got {got}")]
    BadLength { order: u64, expected: usize, got: usize },
    #[error("value is not real")]
    NotReal,
    #[error("missing second operand")]
    MissingOperand,
    #[error("parse error: {0}")]
    Parse(String),
}

fn coord_matrix(vs: &[CycNum]) -> linalg::QMat {
    // one column per element
    let phi = vs[0].numerators().len();
    let cols: Vec<Vec<BigRational>> = vs.iter().map(|v| v.coeffs()).collect();
    (0..phi).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Minimal polynomial over `Q`, primitive with positive leading coefficient.
pub fn min_poly(x: &CycNum) -> IntPoly {
    if let Some(r) = x.to_rational() {
        return IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
    }
    // first linear dependence among 1, x, x², …
    let x = x.reduced();
    let phi = x.numerators().len();
    let mut powers = vec![CycNum::one(x.order())];
    for _ in 0..phi {
        let next = powers.last().unwrap() * &x;
        powers.push(next);
    }
    let mut m = coord_matrix(&powers);
    let pivots = linalg::rref(&mut m);
    let free = (0..powers.len()).find(|c| !pivots.contains(c)).expect("φ+1 vectors in dimension φ");
    let mut coeffs = vec![BigRational::zero(); free + 1];
    coeffs[free] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        if pc < free {
            coeffs[pc] = -m[r][free].clone();
        }
    }
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let ints = coeffs.into_iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    IntPoly::new(ints).primitive()
}

/// Degree of `x` over `Q`.
pub fn degree(x: &CycNum) -> usize {
    min_poly(x).degree()
}

/// Whether `x ∈ Q(gen)`.
pub fn in_subfield(x: &CycNum, gen: &CycNum) -> Result<bool, FieldError> {
    if x.is_rational() {
        return Ok(true);
    }
    let (x, gen) = CycNum::to_common(x, gen)?;
    let d = degree(&gen);
    let mut basis = vec![CycNum::one(gen.order())];
    for _ in 1..d {
        let next = basis.last().unwrap() * &gen;
        basis.push(next);
    }
    let a = coord_matrix(&basis);
    Ok(linalg::solve(&a, &x.coeffs()).is_some())
}
