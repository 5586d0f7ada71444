//! Straight-line flow: tracing, saddle connections and cylinders.
//!
//! All computations happen in a frame adapted to the flow vector `v`: a point
//! `z` has height `Im(v̄ z)` (constant along the flow) and forward coordinate
//! `Re(v̄ z)`. Both are exact real elements of the surface field joined with
//! the field of `v` and `i`.

mod cylinders;
mod saddles;
mod trace;

pub use cylinders::{
    commensurate_moduli, cylinder_decomposition, decompose_along, Cylinder, CylinderPiece, Decomposition,
    DecompositionOutcome, Moduli, NotJsWitness,
};
pub use saddles::saddle_connections;
pub use trace::{separatrices, trace_ray, TraceOutcome, TraceStart};

use crate::numfield::{lcm_u64, CycNum, FieldError, RealCyc};
use crate::surface::{EdgeRef, SurfaceError, TranslationSurface};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

/// Default number of polygon crossings before a trace gives up.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("direction does not leave corner ({polygon}, {vertex}) into the surface")]
    NotInSector { polygon: usize, vertex: usize },
    #[error("point is not in the interior of polygon {polygon}")]
    PointNotInterior { polygon: usize },
    #[error("cylinder list is empty or mixes directions")]
    BadCylinders,
    #[error("moduli are incommensurable: ratio {ratio} is irrational")]
    Incommensurable { ratio: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A projective direction `(x, y)`, normalized to `(1, y/x)` or `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Direction {
    x: RealCyc,
    y: RealCyc,
}

impl Direction {
    pub fn new(x: RealCyc, y: RealCyc) -> Result<Self, FlowError> {
        if x.is_zero() {
            if y.is_zero() {
                return Err(FlowError::ZeroDirection);
            }
            return Ok(Direction { x: RealCyc::zero(), y: RealCyc::one() });
        }
        let y = y.try_div(&x)?.reduced();
        Ok(Direction { x: RealCyc::one(), y })
    }

    pub fn from_ints(x: i64, y: i64) -> Result<Self, FlowError> {
        Self::new(RealCyc::from_int(x), RealCyc::from_int(y))
    }

    pub fn vertical() -> Self {
        Direction { x: RealCyc::zero(), y: RealCyc::one() }
    }

    pub fn horizontal() -> Self {
        Direction { x: RealCyc::one(), y: RealCyc::zero() }
    }

    /// Direction of a nonzero planar vector.
    pub fn from_vector(v: &CycNum) -> Result<Self, FlowError> {
        Self::new(v.re().reduced(), v.im().reduced())
    }

    pub fn x(&self) -> &RealCyc {
        &self.x
    }

    pub fn y(&self) -> &RealCyc {
        &self.y
    }

    /// The representative `x + iy` as a field element.
    pub fn vector(&self) -> CycNum {
        let i = CycNum::i();
        self.x.value() + &(&i * self.y.value())
    }

    /// Slope `y/x`, or `None` for the vertical direction.
    pub fn slope(&self) -> Option<&RealCyc> {
        if self.x.is_zero() {
            None
        } else {
            Some(&self.y)
        }
    }
}

fn cmp_real(a: &CycNum, b: &CycNum) -> Ordering {
    (a - b).re_sign()
}

/// Where a leaf at a given height leaves a polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Exit {
    Edge(usize),
    Vertex(usize),
}

/// The surface lifted to a common order with `v`, plus per-vertex heights.
pub(crate) struct Frame {
    pub surf: TranslationSurface,
    pub v: CycNum,
    pub vbar: CycNum,
    pub h: Vec<Vec<CycNum>>,
    pub s: Vec<Vec<CycNum>>,
    /// Front edges (where the flow leaves) of each polygon, bottom to top.
    pub fronts: Vec<Vec<usize>>,
    /// Back edges (where the flow enters), bottom to top.
    pub backs: Vec<Vec<usize>>,
    /// `(glued edge, translation)` for every edge.
    pub trans: Vec<Vec<(EdgeRef, CycNum, CycNum)>>,
}

impl Frame {
    pub fn new(s: &TranslationSurface, v: &CycNum) -> Result<Frame, FlowError> {
        if v.is_zero() {
            return Err(FlowError::ZeroDirection);
        }
        let l = lcm_u64(lcm_u64(s.order(), v.order()), 4);
        let surf = s.lifted(l)?;
        let v = v.lift(l)?;
        let vbar = v.conj();
        let mut fr = Frame { surf, v, vbar, h: vec![], s: vec![], fronts: vec![], backs: vec![], trans: vec![] };
        for p in fr.surf.polygons() {
            fr.h.push(p.vertices.iter().map(|z| fr.height(z)).collect());
            fr.s.push(p.vertices.iter().map(|z| fr.forward(z)).collect());
        }
        for (pi, p) in fr.surf.polygons().iter().enumerate() {
            let k = p.len();
            let mut fronts = Vec::new();
            let mut backs = Vec::new();
            for e in 0..k {
                match cmp_real(&fr.h[pi][(e + 1) % k], &fr.h[pi][e]) {
                    Ordering::Greater => fronts.push(e),
                    Ordering::Less => backs.push(e),
                    Ordering::Equal => {}
                }
            }
            // front chains rise along the edge order, back chains fall
            let hp = &fr.h[pi];
            fronts.sort_by(|&a, &b| cmp_real(&hp[a], &hp[b]));
            backs.sort_by(|&a, &b| cmp_real(&hp[(a + 1) % k], &hp[(b + 1) % k]));
            fr.fronts.push(fronts);
            fr.backs.push(backs);
        }
        let mut trans = Vec::new();
        for (pi, p) in fr.surf.polygons().iter().enumerate() {
            let mut row = Vec::new();
            for e in 0..p.len() {
                let f = fr.surf.glued(EdgeRef::new(pi, e));
                let tau = fr.surf.polygon(f.polygon).vertex(f.edge) - p.vertex(e + 1);
                let ht = fr.height(&tau);
                row.push((f, tau, ht));
            }
            trans.push(row);
        }
        fr.trans = trans;
        Ok(fr)
    }

    // both are kept in the frame order so equal values have equal keys
    pub fn height(&self, z: &CycNum) -> CycNum {
        (&self.vbar * z).im().into_inner().lift(self.v.order()).expect("frame order contains i")
    }

    pub fn forward(&self, z: &CycNum) -> CycNum {
        (&self.vbar * z).re().into_inner().lift(self.v.order()).expect("frame order")
    }

    pub fn poly_len(&self, p: usize) -> usize {
        self.h[p].len()
    }

    /// Exit of the leaf at height `h0` in polygon `p`.
    pub fn exit(&self, p: usize, h0: &CycNum) -> Option<Exit> {
        let k = self.poly_len(p);
        for &e in &self.fronts[p] {
            let a = &self.h[p][e];
            let b = &self.h[p][(e + 1) % k];
            let ca = cmp_real(h0, a);
            if ca == Ordering::Equal {
                return Some(Exit::Vertex(e));
            }
            let cb = cmp_real(h0, b);
            if cb == Ordering::Equal {
                return Some(Exit::Vertex((e + 1) % k));
            }
            if ca == Ordering::Greater && cb == Ordering::Less {
                return Some(Exit::Edge(e));
            }
        }
        None
    }

    /// Interpolated forward coordinate on edge `e` of `p` at height `h0`.
    pub fn forward_on_edge(&self, p: usize, e: usize, h0: &CycNum) -> CycNum {
        let k = self.poly_len(p);
        let (ha, hb) = (&self.h[p][e], &self.h[p][(e + 1) % k]);
        let (sa, sb) = (&self.s[p][e], &self.s[p][(e + 1) % k]);
        let t = (h0 - ha) / (hb - ha);
        sa + &(&t * &(sb - sa))
    }

    /// Length of the cross-section of `p` at height `h0`, in frame units.
    pub fn section(&self, p: usize, h0: &CycNum) -> CycNum {
        let k = self.poly_len(p);
        let hp = &self.h[p];
        let front = self.fronts[p].iter().find(|&&e| {
            cmp_real(&hp[e], h0) != Ordering::Greater && cmp_real(h0, &hp[(e + 1) % k]) != Ordering::Greater
        });
        let back = self.backs[p].iter().find(|&&e| {
            cmp_real(&hp[(e + 1) % k], h0) != Ordering::Greater && cmp_real(h0, &hp[e]) != Ordering::Greater
        });
        match (front, back) {
            (Some(&f), Some(&b)) => self.forward_on_edge(p, f, h0) - self.forward_on_edge(p, b, h0),
            _ => {
                // a horizontal edge at the extreme height, or a single vertex
                let at: Vec<&CycNum> =
                    (0..k).filter(|&i| cmp_real(&hp[i], h0) == Ordering::Equal).map(|i| &self.s[p][i]).collect();
                if at.len() >= 2 {
                    let mut lo = at[0].clone();
                    let mut hi = at[0].clone();
                    for x in &at[1..] {
                        if cmp_real(x, &lo) == Ordering::Less {
                            lo = (*x).clone();
                        }
                        if cmp_real(x, &hi) == Ordering::Greater {
                            hi = (*x).clone();
                        }
                    }
                    hi - lo
                } else {
                    CycNum::zero(self.v.order())
                }
            }
        }
    }
}

/// A segment of the flow from one vertex class to another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaddleConnection {
    pub start: usize,
    pub end: usize,
    pub holonomy: CycNum,
    /// Edges crossed, each given on the side being left.
    pub crossings: Vec<EdgeRef>,
    pub start_corner: (usize, usize),
    pub end_corner: (usize, usize),
}

impl SaddleConnection {
    /// Holonomy recomputed from the corners and the crossing list alone.
    pub fn retrace(&self, s: &TranslationSurface) -> CycNum {
        let (p0, i0) = self.start_corner;
        let (p1, i1) = self.end_corner;
        let mut sum = CycNum::zero(s.order());
        for e in &self.crossings {
            let f = s.glued(*e);
            sum += &(s.polygon(f.polygon).vertex(f.edge) - s.polygon(e.polygon).vertex(e.edge + 1));
        }
        s.polygon(p1).vertex(i1) - &sum - s.polygon(p0).vertex(i0)
    }
}
