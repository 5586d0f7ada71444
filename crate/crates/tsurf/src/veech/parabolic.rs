use super::VeechError;
use crate::flow::{commensurate_moduli, decompose_along, Cylinder, DecompositionOutcome, Direction, FlowError};
use crate::numfield::{CycNum, RealCyc};
use crate::surface::{EdgeRef, Mat2, TranslationSurface};
use num_bigint::BigInt;
use serde::Serialize;

/// Cylinders of one direction with powers `m_i` such that `m_i μ_i = μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MulticurveTwistData {
    pub direction: Direction,
    /// Flow vector the cylinders were computed with.
    pub vector: CycNum,
    pub cylinders: Vec<Cylinder>,
    #[serde(serialize_with = "ser_ints")]
    pub powers: Vec<BigInt>,
    pub total_modulus: RealCyc,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parabolic {
    pub matrix: Mat2,
    pub twist: MulticurveTwistData,
}

/// The linear part of the multitwist along `v` with modulus `μ`:
/// `I + (μ/|v|²) v·(-v_y, v_x)`. For `v = (0, 1)` this is `(1 0; -μ 1)`.
pub fn parabolic_matrix(v: &CycNum, mu: &RealCyc) -> Result<Mat2, VeechError> {
    let vx = v.re();
    let vy = v.im();
    let k = mu.try_div(&v.norm_sq())?;
    let kxy = k.try_mul(&vx.try_mul(&vy)?)?;
    let one = RealCyc::one();
    let m = Mat2::new(
        one.try_sub(&kxy)?,
        k.try_mul(&vx.try_mul(&vx)?)?,
        -k.try_mul(&vy.try_mul(&vy)?)?,
        one.try_add(&kxy)?,
    );
    Ok(m.reduced())
}

/// The parabolic Veech group element of a Jenkins-Strebel direction whose
/// cylinder moduli are commensurable.
pub fn parabolic_element(s: &TranslationSurface, d: &Direction, cap: usize) -> Result<Parabolic, VeechError> {
    let v = d.vector();
    let dec = match decompose_along(s, &v, cap)? {
        DecompositionOutcome::Cylinders(c) => c,
        DecompositionOutcome::NotJs(w) => return Err(VeechError::NotJs(w)),
        DecompositionOutcome::Undetermined { unfinished } => return Err(VeechError::Undetermined { unfinished }),
    };
    let m = commensurate_moduli(&dec.moduli()).map_err(|e| match e {
        FlowError::Incommensurable { ratio } => VeechError::Incommensurable(ratio),
        e => VeechError::Flow(e),
    })?;
    let matrix = parabolic_matrix(&v, &m.modulus)?;
    Ok(Parabolic {
        matrix,
        twist: MulticurveTwistData {
            direction: d.clone(),
            vector: v,
            cylinders: dec.cylinders,
            powers: m.multipliers,
            total_modulus: m.modulus,
        },
    })
}

/// What the homology action of a multitwist needs: the core curves as
/// sequences of crossed edges, and the powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultitwistRecord {
    pub matrix: Mat2,
    pub vector: CycNum,
    pub cores: Vec<Vec<EdgeRef>>,
    pub core_holonomies: Vec<CycNum>,
    #[serde(serialize_with = "ser_ints")]
    pub powers: Vec<BigInt>,
}

pub fn multitwist_auto(twist: &MulticurveTwistData) -> Result<MultitwistRecord, VeechError> {
    Ok(MultitwistRecord {
        matrix: parabolic_matrix(&twist.vector, &twist.total_modulus)?,
        vector: twist.vector.clone(),
        cores: twist.cylinders.iter().map(|c| c.core.clone()).collect(),
        core_holonomies: twist.cylinders.iter().map(|c| c.holonomy.clone()).collect(),
        powers: twist.powers.clone(),
    })
}
