use super::{FlowError, SaddleConnection};
use crate::numfield::{lcm_u64, CycNum, RealCyc};
use crate::surface::{cross_sign, EdgeRef, TranslationSurface};
use std::cmp::Ordering;

struct Search<'a> {
    s: &'a TranslationSurface,
    b2: RealCyc,
    apex: CycNum,
    start: (usize, usize),
    found: Vec<SaddleConnection>,
}

fn len_sq(z: &CycNum) -> RealCyc {
    z.norm_sq()
}

impl Search<'_> {
    fn within(&self, z: &CycNum) -> bool {
        len_sq(&(z - &self.apex)) <= self.b2
    }

    // distance from the apex to the segment [a, b] is at most the bound
    fn segment_within(&self, a: &CycNum, b: &CycNum) -> bool {
        if self.within(a) || self.within(b) {
            return true;
        }
        let d = b - a;
        let w = d.conj() * (&self.apex - a);
        let dot = w.re();
        let d2 = len_sq(&d);
        if !dot.is_positive() || dot >= d2 {
            return false;
        }
        let cr = w.im();
        &cr * &cr <= &self.b2 * &d2
    }

    // point of the line through a, b in direction r from the apex
    fn hit(&self, r: &CycNum, a: &CycNum, b: &CycNum) -> CycNum {
        let d = b - a;
        let num = (d.conj() * (a - &self.apex)).im();
        let den = (d.conj() * r).im();
        &self.apex + &(r * (num / den).value())
    }

    fn record(&mut self, x: &CycNum, end: (usize, usize), crossings: &[EdgeRef]) {
        self.found.push(SaddleConnection {
            start: self.s.vertex_class(self.start.0, self.start.1),
            end: self.s.vertex_class(end.0, end.1),
            holonomy: (x - &self.apex).reduced(),
            crossings: crossings.to_vec(),
            start_corner: self.start,
            end_corner: end,
        });
    }

    /// Polygon `q` placed at `off`, seen from the apex through the open cone
    /// `(r, l)`. `entry` is the edge we came in through.
    fn visit(
        &mut self,
        q: usize,
        off: &CycNum,
        entry: Option<usize>,
        r: &CycNum,
        l: &CycNum,
        crossings: &mut Vec<EdgeRef>,
    ) {
        let s = self.s;
        let poly = s.polygon(q);
        let k = poly.len();
        let i0 = self.start.1;
        let skip_vertex = |j: usize| match entry {
            Some(e) => j == e || j == (e + 1) % k,
            None => j == i0 || j == (i0 + 1) % k || j == (i0 + k - 1) % k,
        };
        let skip_edge = |f: usize| match entry {
            Some(e) => f == e,
            None => f == i0 || f == (i0 + k - 1) % k,
        };
        for j in 0..k {
            if skip_vertex(j) {
                continue;
            }
            let x = poly.vertex(j) + off;
            let d = &x - &self.apex;
            if cross_sign(r, &d) == Ordering::Greater && cross_sign(&d, l) == Ordering::Greater && self.within(&x) {
                self.record(&x, (q, j), crossings);
            }
        }
        for f in 0..k {
            if skip_edge(f) {
                continue;
            }
            let a = poly.vertex(f) + off;
            let b = poly.vertex(f + 1) + off;
            let (da, db) = (&a - &self.apex, &b - &self.apex);
            let r2 = if cross_sign(r, &da) == Ordering::Greater { da } else { r.clone() };
            let l2 = if cross_sign(&db, l) == Ordering::Greater { db } else { l.clone() };
            if cross_sign(&r2, &l2) != Ordering::Greater {
                continue;
            }
            let (ca, cb) = (self.hit(&r2, &a, &b), self.hit(&l2, &a, &b));
            if !self.segment_within(&ca, &cb) {
                continue;
            }
            let g = s.glued(EdgeRef::new(q, f));
            let tau = s.polygon(g.polygon).vertex(g.edge) - poly.vertex(f + 1);
            let off2 = off - &tau;
            crossings.push(EdgeRef::new(q, f));
            self.visit(g.polygon, &off2, Some(g.edge), &r2, &l2, crossings);
            crossings.pop();
        }
    }
}

/// Every saddle connection of length at most `bound`, once per orientation,
/// grouped by starting corner.
pub fn saddle_connections(s: &TranslationSurface, bound: &RealCyc) -> Result<Vec<SaddleConnection>, FlowError> {
    let order = lcm_u64(s.order(), bound.order());
    let s = s.lifted(order)?;
    let b2 = bound * bound;
    let corners: Vec<(usize, usize)> =
        (0..s.num_polygons()).flat_map(|p| (0..s.polygon(p).len()).map(move |i| (p, i))).collect();
    let per = crate::par::map(&corners, |&(p, i)| {
        let poly = s.polygon(p);
        let k = poly.len();
        let apex = poly.vertex(i).clone();
        let mut search = Search { s: &s, b2: b2.clone(), apex, start: (p, i), found: Vec::new() };
        let u = poly.edge_vector(i);
        if len_sq(&u) <= search.b2 {
            search.record(poly.vertex(i + 1), (p, (i + 1) % k), &[]);
        }
        let w = -poly.edge_vector(i + k - 1);
        search.visit(p, &CycNum::zero(order), None, &u, &w, &mut Vec::new());
        search.found
    });
    Ok(per.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_double_ngon, build_origami};

    #[test]
    fn torus_unit_bound() {
        let t = build_origami(&[1], &[1]).unwrap();
        let sc = saddle_connections(&t, &RealCyc::one()).unwrap();
        let mut hol: Vec<String> = sc.iter().map(|c| c.holonomy.to_string()).collect();
        hol.sort();
        assert_eq!(hol, vec!["-1", "-z4^1", "1", "z4^1"]);
        let sc2 = saddle_connections(&t, &RealCyc::from_int(2)).unwrap();
        // ±1, ±i and the four diagonals; ±2 passes through the cone point
        assert_eq!(sc2.len(), 8);
        for c in &sc2 {
            assert_eq!(c.retrace(&t), c.holonomy);
        }
    }

    #[test]
    fn closed_under_negation() {
        let s = build_double_ngon(5).unwrap();
        let sc = saddle_connections(&s, &RealCyc::from_int(2)).unwrap();
        assert!(!sc.is_empty());
        for c in &sc {
            assert!(sc.iter().any(|d| d.holonomy == -&c.holonomy));
            assert_eq!(c.retrace(&s), c.holonomy);
        }
    }
}
