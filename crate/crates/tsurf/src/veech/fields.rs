use super::{classify, MatrixKind, VeechError};
use crate::flow::Direction;
use crate::numfield::{cos2pi, in_subfield, min_poly, CycNum, IntPoly, RealCyc};
use crate::surface::Mat2;
use num_rational::BigRational;
use serde::Serialize;

/// Attempts allowed when combining generators into one primitive element.
pub const PRIMITIVE_ATTEMPTS: usize = 64;
/// Default number of four-element subsets for cross-ratio fields.
pub const CROSS_RATIO_CAP: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceFieldReport {
    pub degree: usize,
    pub primitive: RealCyc,
    pub min_poly: IntPoly,
    pub generator_description: String,
}

impl TraceFieldReport {
    /// Whether `x` lies in the field.
    pub fn contains(&self, x: &RealCyc) -> Result<bool, VeechError> {
        Ok(in_subfield(x.value(), self.primitive.value())?)
    }
}

fn describe(p: &RealCyc, degree: usize) -> String {
    if degree == 1 {
        return "Q".into();
    }
    // look for Q(cos 2π/m) with m dividing the ambient order
    let n = 2 * p.order();
    for m in 3..=n {
        if n % m != 0 || crate::numfield::euler_phi(m) / 2 != degree as u64 {
            continue;
        }
        let c = cos2pi(1, m as i64).expect("m >= 3");
        if in_subfield(c.value(), p.value()).unwrap_or(false) && in_subfield(p.value(), c.value()).unwrap_or(false) {
            return format!("Q(cos 2π/{m})");
        }
    }
    format!("Q({p})")
}

/// The smallest field containing every element of `traces`, through a
/// primitive element `Σ c_i t_i` with small positive integer `c_i`.
pub fn trace_field(traces: &[RealCyc]) -> Result<TraceFieldReport, VeechError> {
    if traces.is_empty() {
        return Err(VeechError::NoTraces);
    }
    let mut gen: Option<RealCyc> = None;
    let mut attempts = 0;
    for t in traces {
        if t.is_rational() {
            continue;
        }
        let t = t.reduced();
        let Some(g) = gen.clone() else {
            gen = Some(t);
            continue;
        };
        if in_subfield(t.value(), g.value())? {
            continue;
        }
        let mut next = None;
        for c in 1..=8i64 {
            attempts += 1;
            if attempts > PRIMITIVE_ATTEMPTS {
                return Err(VeechError::PrimitiveSearchFailed(PRIMITIVE_ATTEMPTS));
            }
            let cand = g.try_add(&t.scale(&BigRational::from_integer(c.into())))?.reduced();
            if in_subfield(g.value(), cand.value())? && in_subfield(t.value(), cand.value())? {
                next = Some(cand);
                break;
            }
        }
        match next {
            Some(c) => gen = Some(c),
            None => return Err(VeechError::PrimitiveSearchFailed(attempts)),
        }
    }
    let primitive = gen.unwrap_or_else(RealCyc::one);
    let poly = min_poly(primitive.value());
    let degree = poly.degree();
    for t in traces {
        if !in_subfield(t.value(), primitive.value())? {
            return Err(VeechError::PrimitiveSearchFailed(attempts));
        }
    }
    Ok(TraceFieldReport { degree, generator_description: describe(&primitive, degree), primitive, min_poly: poly })
}

/// `Q(tr A)` for a hyperbolic `A`.
pub fn trace_field_from_hyperbolic(a: &Mat2) -> Result<TraceFieldReport, VeechError> {
    let c = classify(a)?;
    if c.kind != MatrixKind::Hyperbolic {
        return Err(VeechError::NotHyperbolic);
    }
    trace_field(&[c.trace])
}

// conj(p) q - p conj(q), twice i times the cross product
fn wedge(p: &CycNum, q: &CycNum) -> CycNum {
    p.conj() * q - p * &q.conj()
}

/// Cross-ratio of four directions as points of the real projective line.
pub fn cross_ratio(a: &Direction, b: &Direction, c: &Direction, d: &Direction) -> Result<RealCyc, VeechError> {
    let (a, b, c, d) = (a.vector(), b.vector(), c.vector(), d.vector());
    let num = wedge(&a, &c).try_mul(&wedge(&b, &d))?;
    let den = wedge(&a, &d).try_mul(&wedge(&b, &c))?;
    Ok(RealCyc::new(num.try_div(&den)?.reduced())?)
}

/// The field generated by the cross-ratios of four-element subsets of
/// `slopes`, visiting at most `cap` subsets in lexicographic order.
pub fn cross_ratio_field(slopes: &[Direction], cap: usize) -> Result<TraceFieldReport, VeechError> {
    let mut distinct: Vec<Direction> = Vec::new();
    for s in slopes {
        if !distinct.contains(s) {
            distinct.push(s.clone());
        }
    }
    let n = distinct.len();
    if n < 4 {
        return Err(VeechError::TooFewSlopes(n));
    }
    let mut quads = Vec::new();
    'outer: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if quads.len() >= cap {
                        break 'outer;
                    }
                    quads.push([i, j, k, l]);
                }
            }
        }
    }
    let ratios =
        crate::par::map(&quads, |q| cross_ratio(&distinct[q[0]], &distinct[q[1]], &distinct[q[2]], &distinct[q[3]]));
    let mut values: Vec<RealCyc> = Vec::new();
    for r in ratios {
        let r = r?;
        if !values.contains(&r) {
            values.push(r);
        }
    }
    trace_field(&values)
}
