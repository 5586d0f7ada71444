//! Elements of Veech groups and the fields they generate.
//!
//! Nothing here computes a full Veech group. Parabolic elements come from
//! cylinder decompositions, elliptic ones from an exhaustive search for
//! rotational symmetries, and every element carries a witness that can be
//! checked exactly.

mod elements;
mod fields;
mod halfplane;
mod parabolic;
mod symmetry;

pub use elements::{
    edge_directions, generated_elements, GeneratedElement, GeneratedElements, SkippedDirection, Witness,
};
pub use fields::{
    cross_ratio, cross_ratio_field, trace_field, trace_field_from_hyperbolic, TraceFieldReport, CROSS_RATIO_CAP,
    PRIMITIVE_ATTEMPTS,
};
pub use halfplane::{cayley, cot_geodesic, iota0, lambda0, mu0};
pub use parabolic::{
    multitwist_auto, parabolic_element, parabolic_matrix, MulticurveTwistData, MultitwistRecord, Parabolic,
};
pub use symmetry::{default_rotations, symmetry_search, AffineAuto};

use crate::flow::{FlowError, NotJsWitness};
use crate::numfield::{cot_pi, FieldError, IntPoly, RealCyc};
use crate::surface::{Mat2, SurfaceError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VeechError {
    #[error("direction is not Jenkins-Strebel")]
    NotJs(NotJsWitness),
    #[error("{unfinished} separatrices did not finish within the crossing cap")]
    Undetermined { unfinished: usize },
    #[error("moduli are incommensurable: ratio {0}")]
    Incommensurable(String),
    #[error("matrix does not have determinant 1")]
    NonUnitDeterminant,
    #[error("matrix is not hyperbolic")]
    NotHyperbolic,
    #[error("need at least four distinct slopes, got {0}")]
    TooFewSlopes(usize),
    #[error("trace list is empty")]
    NoTraces,
    #[error("no primitive element found after {0} attempts")]
    PrimitiveSearchFailed(usize),
    #[error("genus must be at least 2, got {0}")]
    BadGenus(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub kind: MatrixKind,
    pub trace: RealCyc,
    /// Integer polynomial with the eigenvalues among its roots:
    /// `x^d m(x + 1/x)` where `m` is the minimal polynomial of the trace.
    pub eigen_poly: IntPoly,
    /// Leading eigenvalue `λ > 1` in absolute value, for hyperbolic matrices.
    pub lambda: Option<f64>,
}

/// `x^d m(x + 1/x)` for the minimal polynomial `m` of `t`.
pub fn eigen_poly(t: &RealCyc) -> IntPoly {
    let m = crate::numfield::min_poly(t.value());
    let d = m.degree();
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    let mut out = IntPoly::new(vec![BigInt::zero()]);
    for (j, c) in m.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = x2p1.pow(j as u32).mul(&IntPoly::new(vec![c.clone()]));
        let mut shift = vec![BigInt::zero(); d - j];
        shift.push(BigInt::from(1));
        term = term.mul(&IntPoly::new(shift));
        out = add_poly(&out, &term);
    }
    out
}

fn add_poly(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.coeffs().len().max(b.coeffs().len());
    let get = |p: &IntPoly, i: usize| p.coeffs().get(i).cloned().unwrap_or_default();
    IntPoly::new((0..n).map(|i| get(a, i) + get(b, i)).collect())
}

/// Elliptic, parabolic or hyperbolic according to the sign of `|tr A| - 2`.
pub fn classify(a: &Mat2) -> Result<Classification, VeechError> {
    if !a.det().is_one() {
        return Err(VeechError::NonUnitDeterminant);
    }
    let trace = a.trace().reduced();
    let two = RealCyc::from_int(2);
    let kind = match (&trace.abs() - &two).sign() {
        Ordering::Less => MatrixKind::Elliptic,
        Ordering::Equal => MatrixKind::Parabolic,
        Ordering::Greater => MatrixKind::Hyperbolic,
    };
    let lambda = (kind == MatrixKind::Hyperbolic).then(|| {
        let t = trace.to_f64();
        let r = (t * t - 4.0).sqrt();
        if t > 0.0 {
            (t + r) / 2.0
        } else {
            (t - r) / 2.0
        }
    });
    let eigen_poly = eigen_poly(&trace);
    Ok(Classification { kind, trace, eigen_poly, lambda })
}

/// Conjugation by `diag(-1, 1)`.
pub fn mirror(a: &Mat2) -> Mat2 {
    Mat2::new(a.a.clone(), -&a.b, -&a.c, a.d.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WimanForm {
    /// The first Wiman differential, two regular `n`-gons.
    Omega1,
    /// The last one, the regular `2n`-gon.
    OmegaG,
}

/// The pair of mirror Veech group generators for the Wiman surfaces with
/// `n = 2g + 1`: a vertical parabolic and a clockwise rotation.
pub fn wiman_generators(g: usize, which: WimanForm) -> Result<(Mat2, Mat2), VeechError> {
    if g < 2 {
        return Err(VeechError::BadGenus(g));
    }
    let n = (2 * g + 1) as i64;
    let two = BigRational::from_integer(2.into());
    let (cot, rot) = match which {
        WimanForm::OmegaG => (cot_pi(1, 2 * n)?, Mat2::rotation(-1, 2 * n)),
        WimanForm::Omega1 => (cot_pi(1, n)?, Mat2::rotation(-1, n)),
    };
    let par = Mat2::new(RealCyc::one(), RealCyc::zero(), -cot.scale(&two), RealCyc::one());
    Ok((par, rot.reduced()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Mat2::from_ints(1, 1, 0, 1)).unwrap().kind, MatrixKind::Parabolic);
        assert_eq!(classify(&Mat2::rotation(1, 10)).unwrap().kind, MatrixKind::Elliptic);
        assert_eq!(classify(&Mat2::from_ints(2, 1, 1, 1)).unwrap().kind, MatrixKind::Hyperbolic);
        assert!(matches!(classify(&Mat2::from_ints(2, 0, 0, 1)), Err(VeechError::NonUnitDeterminant)));
        let (p, r) = wiman_generators(2, WimanForm::OmegaG).unwrap();
        // the plain product is parabolic; with the inverse rotation it is hyperbolic
        assert_eq!(classify(&p.mul(&r)).unwrap().kind, MatrixKind::Parabolic);
        let h = classify(&p.mul(&r.inverse().unwrap())).unwrap();
        assert_eq!(h.kind, MatrixKind::Hyperbolic);
        // trace 3 + √5
        let lam = h.lambda.unwrap();
        assert!((lam + 1.0 / lam - (3.0 + 5f64.sqrt())).abs() < 1e-12);
        assert!(h.eigen_poly.eval_f64(lam).abs() < 1e-6);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror(&Mat2::identity()), Mat2::identity());
        assert_eq!(mirror(&Mat2::from_ints(1, 3, 0, 1)), Mat2::from_ints(1, -3, 0, 1));
        assert_eq!(mirror(&Mat2::rotation(1, 7)), Mat2::rotation(-1, 7));
    }

    #[test]
    fn generator_entries() {
        let (p, r) = wiman_generators(2, WimanForm::OmegaG).unwrap();
        let want = -cot_pi(1, 10).unwrap().scale(&BigRational::from_integer(2.into()));
        assert_eq!(p.c, want);
        assert!(r.pow(10).is_identity());
        assert!(r.b.is_positive());
        let (p1, r1) = wiman_generators(2, WimanForm::Omega1).unwrap();
        assert_eq!(p1.c, -cot_pi(1, 5).unwrap().scale(&BigRational::from_integer(2.into())));
        assert!(r1.pow(5).is_identity());
        assert!(wiman_generators(1, WimanForm::Omega1).is_err());
    }
}
