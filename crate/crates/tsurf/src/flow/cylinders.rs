use super::trace::to_saddle;
use super::{cmp_real, Direction, FlowError, Frame, SaddleConnection, TraceOutcome};
use crate::numfield::linalg::{kernel, QMat};
use crate::numfield::{CycNum, RealCyc};
use crate::surface::{EdgeRef, TranslationSurface};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    pub area: RealCyc,
    pub modulus: RealCyc,
    /// Holonomy of the core curve, oriented along the flow.
    pub holonomy: CycNum,
    pub circumference_sq: RealCyc,
    pub width_sq: RealCyc,
    /// Present when `|v|` is rational, which covers the axis directions.
    pub circumference: Option<RealCyc>,
    pub width: Option<RealCyc>,
    /// Edges crossed by the core curve.
    pub core: Vec<EdgeRef>,
    /// Indices into [`Decomposition::saddle_connections`].
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    /// The strips of the cylinder inside each polygon.
    pub pieces: Vec<CylinderPiece>,
}

/// Part of polygon `polygon` between two leaves, as values of the height
/// `Im(v̄ z)` for the flow vector `v` of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderPiece {
    pub polygon: usize,
    pub lo: RealCyc,
    pub hi: RealCyc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub direction: Direction,
    pub cylinders: Vec<Cylinder>,
    pub saddle_connections: Vec<SaddleConnection>,
}

impl Decomposition {
    pub fn moduli(&self) -> Vec<RealCyc> {
        self.cylinders.iter().map(|c| c.modulus.clone()).collect()
    }

    pub fn total_area(&self) -> RealCyc {
        self.cylinders.iter().fold(RealCyc::zero(), |a, c| &a + &c.area).reduced()
    }
}

/// Proof that no saddle connection is parallel to the direction: the only
/// integer edge combinations with zero height have zero holonomy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotJsWitness {
    pub edges: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionOutcome {
    Cylinders(Decomposition),
    NotJs(NotJsWitness),
    Undetermined { unfinished: usize },
}

fn exact_sqrt_rational(r: &RealCyc) -> Option<RealCyc> {
    let q = r.to_rational()?;
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().clone(), q.denom().clone());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &sn * &sn == n && &sd * &sd == d {
        Some(RealCyc::from_rational(&BigRational::new(sn, sd)))
    } else {
        None
    }
}

fn not_js_certificate(fr: &Frame) -> Option<NotJsWitness> {
    let pairs = fr.surf.edge_pairs();
    let vecs: Vec<CycNum> = pairs.iter().map(|(e, _)| fr.surf.edge_vector(*e)).collect();
    let heights: Vec<Vec<BigRational>> = vecs.iter().map(|e| fr.height(e).coeffs()).collect();
    let rows = heights.first().map_or(0, |h| h.len());
    let m: QMat = (0..rows).map(|r| heights.iter().map(|h| h[r].clone()).collect()).collect();
    let ker = kernel(&m, vecs.len());
    let all_zero = ker.iter().all(|x| {
        let mut sum = CycNum::zero(fr.v.order());
        for (c, e) in x.iter().zip(&vecs) {
            if !c.is_zero() {
                sum += &e.scale(c);
            }
        }
        sum.is_zero()
    });
    all_zero.then_some(NotJsWitness { edges: vecs.len(), kernel_dim: ker.len() })
}

struct Slab {
    poly: usize,
    lo: CycNum,
    hi: CycNum,
    front: usize,
    area: CycNum,
    bottom_len_zero: bool,
    top_len_zero: bool,
}

/// Cylinder decomposition in the direction `dir`.
pub fn cylinder_decomposition(
    s: &TranslationSurface,
    dir: &Direction,
    cap: usize,
) -> Result<DecompositionOutcome, FlowError> {
    decompose_along(s, &dir.vector(), cap)
}

/// As [`cylinder_decomposition`] but with an oriented flow vector; cores and
/// saddle connections point along `v`.
pub fn decompose_along(s: &TranslationSurface, v: &CycNum, cap: usize) -> Result<DecompositionOutcome, FlowError> {
    let fr = Frame::new(s, v)?;
    let direction = Direction::from_vector(v)?;
    if let Some(w) = not_js_certificate(&fr) {
        return Ok(DecompositionOutcome::NotJs(w));
    }
    let corners = fr.sector_corners();
    let traced = crate::par::map(&corners, |&(p, i)| fr.corner_trace(p, i, cap).expect("corner in sector"));
    let unfinished = traced.iter().filter(|(o, _)| matches!(o, TraceOutcome::Undetermined { .. })).count();
    if unfinished > 0 {
        return Ok(DecompositionOutcome::Undetermined { unfinished });
    }
    let np = fr.surf.num_polygons();
    let mut crit: Vec<Vec<CycNum>> = fr.h.clone();
    let mut chord_owner: HashMap<(usize, (u64, Vec<BigInt>, BigInt)), usize> = HashMap::new();
    let mut saddles = Vec::with_capacity(traced.len());
    for (id, (&c, (out, visits))) in corners.iter().zip(&traced).enumerate() {
        saddles.push(to_saddle(c, s, out).expect("finished trace"));
        for (p, h) in visits {
            crit[*p].push(h.clone());
            chord_owner.entry((*p, h.key())).or_insert(id);
        }
    }
    let slabs_per: Vec<Vec<Slab>> = crate::par::map_range(np, |p| {
        let mut hs = crit[p].clone();
        hs.sort_by(cmp_real);
        hs.dedup();
        let k = fr.poly_len(p);
        let mut out = Vec::new();
        for win in hs.windows(2) {
            let (lo, hi) = (&win[0], &win[1]);
            let front = *fr.fronts[p]
                .iter()
                .find(|&&e| {
                    cmp_real(&fr.h[p][e], lo) != std::cmp::Ordering::Greater
                        && cmp_real(hi, &fr.h[p][(e + 1) % k]) != std::cmp::Ordering::Greater
                })
                .expect("slab has a front edge");
            let (a, b) = (fr.section(p, lo), fr.section(p, hi));
            let area = (hi - lo) * (&a + &b).scale(&BigRational::new(1.into(), 2.into()));
            out.push(Slab {
                poly: p,
                lo: lo.clone(),
                hi: hi.clone(),
                front,
                area,
                bottom_len_zero: a.is_zero(),
                top_len_zero: b.is_zero(),
            });
        }
        out
    });
    let slabs: Vec<Slab> = slabs_per.into_iter().flatten().collect();
    let by_lo: HashMap<(usize, (u64, Vec<BigInt>, BigInt)), usize> =
        slabs.iter().enumerate().map(|(i, sl)| ((sl.poly, sl.lo.key()), i)).collect();
    let next: Vec<usize> = slabs
        .iter()
        .map(|sl| {
            let (f, _, ht) = &fr.trans[sl.poly][sl.front];
            let lo = &sl.lo + ht;
            *by_lo.get(&(f.polygon, lo.key())).expect("slabs match across edges")
        })
        .collect();
    let vnorm = fr.v.norm_sq();
    let vabs = exact_sqrt_rational(&vnorm);
    let mut seen = vec![false; slabs.len()];
    let mut cylinders = Vec::new();
    for start in 0..slabs.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j);
            j = next[j];
        }
        let dh = &slabs[start].hi - &slabs[start].lo;
        let mut scaled = CycNum::zero(fr.v.order());
        let mut shift = CycNum::zero(fr.v.order());
        let mut core = Vec::new();
        let mut bottom = Vec::new();
        let mut top = Vec::new();
        let mut pieces = Vec::new();
        for &j in &cycle {
            let sl = &slabs[j];
            pieces.push(CylinderPiece {
                polygon: sl.poly,
                lo: RealCyc::new_unchecked(sl.lo.reduced()),
                hi: RealCyc::new_unchecked(sl.hi.reduced()),
            });
            scaled += &sl.area;
            shift += &fr.trans[sl.poly][sl.front].1;
            core.push(EdgeRef::new(sl.poly, sl.front));
            if !sl.bottom_len_zero {
                if let Some(&id) = chord_owner.get(&(sl.poly, sl.lo.key())) {
                    if !bottom.contains(&id) {
                        bottom.push(id);
                    }
                }
            }
            if !sl.top_len_zero {
                if let Some(&id) = chord_owner.get(&(sl.poly, sl.hi.key())) {
                    if !top.contains(&id) {
                        top.push(id);
                    }
                }
            }
        }
        let modulus = RealCyc::new_unchecked((&scaled / &(&dh * &dh)).reduced());
        let area = RealCyc::new_unchecked((&scaled / vnorm.value()).reduced());
        let holonomy = (-shift).reduced();
        let width_sq = RealCyc::new_unchecked((&(&dh * &dh) / vnorm.value()).reduced());
        let circumference_sq = holonomy.norm_sq().reduced();
        let width = vabs.as_ref().map(|va| RealCyc::new_unchecked((&dh / va.value()).reduced()));
        let circumference = width.as_ref().map(|w| (&area / w).reduced());
        cylinders.push(Cylinder {
            area,
            modulus,
            holonomy,
            circumference_sq,
            width_sq,
            circumference,
            width,
            core,
            bottom,
            top,
            pieces,
        });
    }
    Ok(DecompositionOutcome::Cylinders(Decomposition { direction, cylinders, saddle_connections: saddles }))
}

/// Smallest `μ` that is a positive integer multiple of every modulus, with
/// the multipliers `μ/μ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Moduli {
    pub modulus: RealCyc,
    #[serde(serialize_with = "ser_ints")]
    pub multipliers: Vec<BigInt>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn commensurate_moduli(moduli: &[RealCyc]) -> Result<Moduli, FlowError> {
    let first = moduli.first().ok_or(FlowError::BadCylinders)?;
    if !first.is_positive() {
        return Err(FlowError::BadCylinders);
    }
    let mut ratios = Vec::with_capacity(moduli.len());
    for m in moduli {
        let r = m.try_div(first)?.reduced();
        let q = r.to_rational().ok_or_else(|| FlowError::Incommensurable { ratio: r.to_string() })?;
        if !q.is_positive() {
            return Err(FlowError::BadCylinders);
        }
        ratios.push(q);
    }
    let mut num_lcm = BigInt::one();
    let mut den_gcd = BigInt::zero();
    for q in &ratios {
        num_lcm = num_lcm.lcm(q.numer());
        den_gcd = den_gcd.gcd(q.denom());
    }
    let l = BigRational::new(num_lcm, den_gcd);
    let multipliers = ratios.iter().map(|q| (&l / q).to_integer()).collect();
    Ok(Moduli { modulus: first.scale(&l).reduced(), multipliers })
}
