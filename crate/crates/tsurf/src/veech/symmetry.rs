use super::VeechError;
use crate::numfield::{lcm_u64, CycNum};
use crate::surface::{act, EdgeRef, Mat2, TranslationSurface};
use serde::Serialize;
use std::collections::VecDeque;

/// An affine automorphism given cell by cell: polygon `p` is sent by
/// `z ↦ linear·z + offsets[p]` onto polygon `polygon_map[p]`, its vertex `j`
/// landing on vertex `j + shifts[p]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineAuto {
    pub linear: Mat2,
    pub polygon_map: Vec<usize>,
    pub shifts: Vec<usize>,
    pub offsets: Vec<CycNum>,
}

impl AffineAuto {
    pub fn edge_map(&self, e: EdgeRef, s: &TranslationSurface) -> EdgeRef {
        let q = self.polygon_map[e.polygon];
        EdgeRef::new(q, (e.edge + self.shifts[e.polygon]) % s.polygon(q).len())
    }

    /// Exact check of the vertex equations and of gluing equivariance.
    pub fn verify(&self, s: &TranslationSurface) -> Result<bool, VeechError> {
        if !self.linear.det().is_one() {
            return Ok(false);
        }
        let mut seen = vec![false; s.num_polygons()];
        for (p, poly) in s.polygons().iter().enumerate() {
            let q = self.polygon_map[p];
            if seen[q] || s.polygon(q).len() != poly.len() {
                return Ok(false);
            }
            seen[q] = true;
            for j in 0..poly.len() {
                let img = self.linear.apply(poly.vertex(j))?.try_add(&self.offsets[p])?;
                if img != *s.polygon(q).vertex(j + self.shifts[p]) {
                    return Ok(false);
                }
            }
        }
        for e in s.edges() {
            if s.glued(self.edge_map(e, s)) != self.edge_map(s.glued(e), s) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Rotations by every root of unity in the surface field.
pub fn default_rotations(s: &TranslationSurface) -> Vec<Mat2> {
    let m = lcm_u64(s.order(), 2) as i64;
    (1..m).map(|j| Mat2::rotation(j, m).reduced()).collect()
}

fn search_one(s: &TranslationSurface, a: &Mat2) -> Result<Vec<AffineAuto>, VeechError> {
    let img = act(s, a)?;
    let order = lcm_u64(s.order(), img.order());
    let base = s.lifted(order)?;
    let img = img.lifted(order)?;
    let np = s.num_polygons();
    let edge_vecs = |t: &TranslationSurface, p: usize| -> Vec<CycNum> {
        (0..t.polygon(p).len()).map(|i| t.polygon(p).edge_vector(i)).collect()
    };
    let src: Vec<Vec<CycNum>> = (0..np).map(|p| edge_vecs(&img, p)).collect();
    let dst: Vec<Vec<CycNum>> = (0..np).map(|p| edge_vecs(&base, p)).collect();
    let fits = |p: usize, q: usize, r: usize| {
        let k = src[p].len();
        dst[q].len() == k && (0..k).all(|j| src[p][j] == dst[q][(j + r) % k])
    };
    let mut found = Vec::new();
    let k0 = src[0].len();
    for q0 in 0..np {
        for r0 in 0..k0 {
            if !fits(0, q0, r0) {
                continue;
            }
            let mut pmap = vec![usize::MAX; np];
            let mut shifts = vec![0usize; np];
            let mut used = vec![false; np];
            pmap[0] = q0;
            shifts[0] = r0;
            used[q0] = true;
            let mut queue = VecDeque::from([0usize]);
            let mut ok = true;
            'bfs: while let Some(p) = queue.pop_front() {
                let k = src[p].len();
                for e in 0..k {
                    let f = s.glued(EdgeRef::new(p, e));
                    let target = s.glued(EdgeRef::new(pmap[p], (e + shifts[p]) % k));
                    let kf = src[f.polygon].len();
                    if s.polygon(target.polygon).len() != kf {
                        ok = false;
                        break 'bfs;
                    }
                    let r = (target.edge + kf - f.edge) % kf;
                    if pmap[f.polygon] == usize::MAX {
                        if used[target.polygon] || !fits(f.polygon, target.polygon, r) {
                            ok = false;
                            break 'bfs;
                        }
                        pmap[f.polygon] = target.polygon;
                        shifts[f.polygon] = r;
                        used[target.polygon] = true;
                        queue.push_back(f.polygon);
                    } else if pmap[f.polygon] != target.polygon || shifts[f.polygon] != r {
                        ok = false;
                        break 'bfs;
                    }
                }
            }
            if !ok || pmap.contains(&usize::MAX) {
                continue;
            }
            let offsets = (0..np)
                .map(|p| (base.polygon(pmap[p]).vertex(shifts[p]) - img.polygon(p).vertex(0)).reduced())
                .collect();
            let auto = AffineAuto { linear: a.clone(), polygon_map: pmap, shifts, offsets };
            if auto.verify(s)? {
                found.push(auto);
            }
        }
    }
    Ok(found)
}

/// For each candidate matrix, every way of realising it as a cell-wise
/// affine automorphism (polygon bijection, vertex shift and translation).
pub fn symmetry_search(s: &TranslationSurface, candidates: &[Mat2]) -> Result<Vec<AffineAuto>, VeechError> {
    let per = crate::par::map(candidates, |a| {
        if !a.det().is_one() {
            return Ok(Vec::new());
        }
        search_one(s, a)
    });
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}
