use super::{Exit, FlowError, Frame, SaddleConnection};
use crate::numfield::CycNum;
use crate::surface::{cross_sign, dot_sign, EdgeRef, TranslationSurface};
use serde::Serialize;
use std::cmp::Ordering;

/// Where a trace begins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStart {
    /// A polygon corner; the direction must point into the surface.
    Corner { polygon: usize, vertex: usize },
    /// A point strictly inside a polygon, in that polygon's coordinates.
    Interior { polygon: usize, point: CycNum },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceOutcome {
    /// The ray reached a vertex. `holonomy` is the displacement from the start.
    HitsCone { class: usize, corner: (usize, usize), holonomy: CycNum, crossings: Vec<EdgeRef> },
    /// The ray came back to its starting point.
    Closes { displacement: CycNum, crossings: Vec<EdgeRef> },
    /// The crossing budget ran out.
    Undetermined { crossings: usize },
}

pub(crate) enum WalkEnd {
    Vertex(usize, usize),
    Closed,
    Cap,
}

pub(crate) struct Walk {
    pub crossings: Vec<EdgeRef>,
    /// Sum of the gluing translations applied so far.
    pub shift: CycNum,
    /// `(polygon, height)` for every polygon the leaf passes through.
    pub visits: Vec<(usize, CycNum)>,
    pub end: WalkEnd,
}

impl Frame {
    pub(crate) fn walk(&self, p0: usize, h0: CycNum, cap: usize, closes: bool) -> Walk {
        let mut p = p0;
        let mut h = h0.clone();
        let mut crossings = Vec::new();
        let mut shift = CycNum::zero(self.v.order());
        let mut visits = vec![(p, h.clone())];
        loop {
            match self.exit(p, &h) {
                // only possible for a leaf touching a single extreme vertex
                None => return Walk { crossings, shift, visits, end: WalkEnd::Cap },
                Some(Exit::Vertex(i)) => return Walk { crossings, shift, visits, end: WalkEnd::Vertex(p, i) },
                Some(Exit::Edge(e)) => {
                    if crossings.len() >= cap {
                        return Walk { crossings, shift, visits, end: WalkEnd::Cap };
                    }
                    let (f, tau, ht) = &self.trans[p][e];
                    crossings.push(EdgeRef::new(p, e));
                    shift += tau;
                    h = &h + ht;
                    p = f.polygon;
                    if closes && p == p0 && h == h0 {
                        return Walk { crossings, shift, visits, end: WalkEnd::Closed };
                    }
                    visits.push((p, h.clone()));
                }
            }
        }
    }

    /// Whether `v` lies in the half-open sector `[u, w)` of corner `(p, i)`.
    pub(crate) fn leaves_corner(&self, p: usize, i: usize) -> Option<bool> {
        let poly = self.surf.polygon(p);
        let k = poly.len();
        let u = poly.edge_vector(i);
        let w = -poly.edge_vector((i + k - 1) % k);
        if cross_sign(&u, &self.v) == Ordering::Equal && dot_sign(&u, &self.v) == Ordering::Greater {
            return Some(true);
        }
        if cross_sign(&u, &self.v) == Ordering::Greater && cross_sign(&self.v, &w) == Ordering::Greater {
            return Some(false);
        }
        None
    }

    /// Trace the separatrix leaving corner `(p, i)`. `None` if `v` does not
    /// leave the surface through this corner.
    pub(crate) fn corner_trace(&self, p: usize, i: usize, cap: usize) -> Option<(TraceOutcome, Vec<(usize, CycNum)>)> {
        let along = self.leaves_corner(p, i)?;
        let poly = self.surf.polygon(p);
        let k = poly.len();
        if along {
            let (f, _, ht) = &self.trans[p][i];
            let visits = vec![(p, self.h[p][i].clone()), (f.polygon, &self.h[p][i] + ht)];
            let j = (i + 1) % k;
            let out = TraceOutcome::HitsCone {
                class: self.surf.vertex_class(p, j),
                corner: (p, j),
                holonomy: poly.edge_vector(i).reduced(),
                crossings: vec![],
            };
            return Some((out, visits));
        }
        let w = self.walk(p, self.h[p][i].clone(), cap, false);
        let out = match w.end {
            WalkEnd::Vertex(q, j) => TraceOutcome::HitsCone {
                class: self.surf.vertex_class(q, j),
                corner: (q, j),
                holonomy: (self.surf.polygon(q).vertex(j) - &w.shift - poly.vertex(i)).reduced(),
                crossings: w.crossings,
            },
            _ => TraceOutcome::Undetermined { crossings: w.crossings.len() },
        };
        Some((out, w.visits))
    }
}

/// Follow the straight line from `start` in direction `v` for at most `cap`
/// polygon crossings.
pub fn trace_ray(
    s: &TranslationSurface,
    start: &TraceStart,
    v: &CycNum,
    cap: usize,
) -> Result<TraceOutcome, FlowError> {
    let fr = Frame::new(s, v)?;
    match start {
        TraceStart::Corner { polygon, vertex } => {
            if *polygon >= s.num_polygons() || *vertex >= s.polygon(*polygon).len() {
                return Err(FlowError::NotInSector { polygon: *polygon, vertex: *vertex });
            }
            fr.corner_trace(*polygon, *vertex, cap)
                .map(|(o, _)| o)
                .ok_or(FlowError::NotInSector { polygon: *polygon, vertex: *vertex })
        }
        TraceStart::Interior { polygon, point } => {
            let p = *polygon;
            if p >= s.num_polygons() {
                return Err(FlowError::PointNotInterior { polygon: p });
            }
            let poly = fr.surf.polygon(p);
            let z = point.lift(crate::numfield::lcm_u64(point.order(), fr.v.order()))?;
            let inside =
                (0..poly.len()).all(|e| cross_sign(&poly.edge_vector(e), &(&z - poly.vertex(e))) == Ordering::Greater);
            if !inside {
                return Err(FlowError::PointNotInterior { polygon: p });
            }
            let w = fr.walk(p, fr.height(&z), cap, true);
            Ok(match w.end {
                WalkEnd::Vertex(q, j) => TraceOutcome::HitsCone {
                    class: fr.surf.vertex_class(q, j),
                    corner: (q, j),
                    holonomy: (fr.surf.polygon(q).vertex(j) - &w.shift - &z).reduced(),
                    crossings: w.crossings,
                },
                WalkEnd::Closed => TraceOutcome::Closes { displacement: (-w.shift).reduced(), crossings: w.crossings },
                WalkEnd::Cap => TraceOutcome::Undetermined { crossings: w.crossings.len() },
            })
        }
    }
}

/// All outgoing separatrices in direction `v`, one per corner whose sector
/// `[u, w)` contains `v`; there are `Σ multiplicities` of them.
pub fn separatrices(
    s: &TranslationSurface,
    v: &CycNum,
    cap: usize,
) -> Result<Vec<((usize, usize), TraceOutcome)>, FlowError> {
    let fr = Frame::new(s, v)?;
    let corners = fr.sector_corners();
    Ok(crate::par::map(&corners, |&(p, i)| ((p, i), fr.corner_trace(p, i, cap).expect("corner in sector").0)))
}

impl Frame {
    pub(crate) fn sector_corners(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in self.surf.classes() {
            for &(p, i) in &c.corners {
                if self.leaves_corner(p, i).is_some() {
                    out.push((p, i));
                }
            }
        }
        out
    }
}

pub(crate) fn to_saddle(start: (usize, usize), s: &TranslationSurface, out: &TraceOutcome) -> Option<SaddleConnection> {
    match out {
        TraceOutcome::HitsCone { class, corner, holonomy, crossings } => Some(SaddleConnection {
            start: s.vertex_class(start.0, start.1),
            end: *class,
            holonomy: holonomy.clone(),
            crossings: crossings.clone(),
            start_corner: start,
            end_corner: *corner,
        }),
        _ => None,
    }
}
