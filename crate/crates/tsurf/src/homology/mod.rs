//! Cellular homology of a glued polygon surface.
//!
//! The cells are the vertex classes, the glued edge pairs and the polygons.
//! Each edge is oriented like its smaller [`EdgeRef`]. Intersection numbers
//! are computed by pushing one cycle off to its left, which turns it into a
//! chain of transverse edge crossings, and counting signed crossings.

mod action;
mod basis;
mod spectral;

pub use action::{auto_action, canonical_subspace_check, core_cycle, period_equivariance, twist_action, twist_matrix};
pub use basis::homology_basis;
pub use spectral::{spectral_report, LeadingEigenvalue, SpectralReport};

use crate::numfield::{CycNum, FieldError};
use crate::surface::{EdgeRef, TranslationSurface};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("surface has genus zero")]
    GenusZero,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("map is not an automorphism of the cell structure")]
    NotAnAutomorphism,
    #[error("intersection form is degenerate")]
    Degenerate,
    #[error("matrix does not preserve the intersection form")]
    NotSymplectic,
    #[error("twist power {0} does not fit in 64 bits")]
    PowerTooLarge(String),
    #[error("check failed at basis cycles {0:?}")]
    CheckFailed(Vec<usize>),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type IntMat = Vec<Vec<i64>>;

/// The CW structure of a translation surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub num_vertices: usize,
    /// Glued pairs, the first side giving the orientation.
    pub edges: Vec<(EdgeRef, EdgeRef)>,
    pub num_faces: usize,
    /// `∂₁`, vertices × edges.
    pub d1: IntMat,
    /// `∂₂`, edges × faces.
    pub d2: IntMat,
    sides: Vec<Vec<(usize, i64)>>,
    glue: Vec<Vec<EdgeRef>>,
    corner_class: Vec<Vec<usize>>,
}

/// Integer coefficients over the edges of a [`CellComplex`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    pub coeffs: Vec<i64>,
}

/// Cycles `a_1..a_g, b_1..b_g` with `⟨a_i, b_j⟩ = δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticBasis {
    pub cycles: Vec<Cycle>,
    pub j: IntMat,
}

impl SymplecticBasis {
    pub fn genus(&self) -> usize {
        self.cycles.len() / 2
    }
}

/// Matrix of a map on `H₁` in a symplectic basis; column `j` holds the
/// coordinates of the image of basis cycle `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Action {
    pub m: IntMat,
}

impl H1Action {
    pub fn identity(n: usize) -> Self {
        H1Action { m: identity(n) }
    }

    pub fn compose(&self, other: &H1Action) -> H1Action {
        H1Action { m: mat_mul(&self.m, &other.m) }
    }

    pub fn pow(&self, e: u32) -> H1Action {
        let mut out = H1Action::identity(self.m.len());
        for _ in 0..e {
            out = out.compose(self);
        }
        out
    }

    /// Inverse of a symplectic matrix, `-J Mᵀ J`.
    pub fn inverse(&self) -> H1Action {
        let j = standard_j(self.m.len() / 2);
        let mut inv = mat_mul(&mat_mul(&j, &transpose(&self.m)), &j);
        for row in &mut inv {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
        H1Action { m: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.m == identity(self.m.len())
    }

    pub fn is_symplectic(&self) -> bool {
        let j = standard_j(self.m.len() / 2);
        mat_mul(&mat_mul(&transpose(&self.m), &j), &self.m) == j
    }

    /// Dual action on `H¹`, the inverse transpose.
    pub fn cohomology(&self) -> IntMat {
        transpose(&self.inverse().m)
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

pub fn identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(m: &IntMat) -> IntMat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let k = b.len();
    let cols = if k == 0 { 0 } else { b[0].len() };
    a.iter().map(|r| (0..cols).map(|j| (0..k).map(|t| r[t] * b[t][j]).sum()).collect()).collect()
}

/// `(0 I; -I 0)` of size `2g`.
pub fn standard_j(g: usize) -> IntMat {
    let mut j = vec![vec![0; 2 * g]; 2 * g];
    for i in 0..g {
        j[i][g + i] = 1;
        j[g + i][i] = -1;
    }
    j
}

pub fn build_complex(s: &TranslationSurface) -> CellComplex {
    let edges = s.edge_pairs();
    let np = s.num_polygons();
    let mut sides: Vec<Vec<(usize, i64)>> = s.polygons().iter().map(|p| vec![(0, 0); p.len()]).collect();
    for (k, (e, f)) in edges.iter().enumerate() {
        sides[e.polygon][e.edge] = (k, 1);
        sides[f.polygon][f.edge] = (k, -1);
    }
    let nv = s.classes().len();
    let corner_class: Vec<Vec<usize>> =
        (0..np).map(|p| (0..s.polygon(p).len()).map(|i| s.vertex_class(p, i)).collect()).collect();
    let glue: Vec<Vec<EdgeRef>> =
        (0..np).map(|p| (0..s.polygon(p).len()).map(|i| s.glued(EdgeRef::new(p, i))).collect()).collect();
    let mut d1 = vec![vec![0i64; edges.len()]; nv];
    for (k, (e, _)) in edges.iter().enumerate() {
        let len = corner_class[e.polygon].len();
        d1[corner_class[e.polygon][(e.edge + 1) % len]][k] += 1;
        d1[corner_class[e.polygon][e.edge]][k] -= 1;
    }
    let mut d2 = vec![vec![0i64; np]; edges.len()];
    for (p, ss) in sides.iter().enumerate() {
        for &(k, sign) in ss {
            d2[k][p] += sign;
        }
    }
    CellComplex { num_vertices: nv, edges, num_faces: np, d1, d2, sides, glue, corner_class }
}

impl CellComplex {
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.edges.len() as i64 + self.num_faces as i64
    }

    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    /// Edge index and sign of side `(p, i)`.
    pub fn side(&self, p: usize, i: usize) -> (usize, i64) {
        self.sides[p][i % self.sides[p].len()]
    }

    pub fn polygon_len(&self, p: usize) -> usize {
        self.sides[p].len()
    }

    pub fn boundary(&self, c: &Cycle) -> Vec<i64> {
        self.d1.iter().map(|r| r.iter().zip(&c.coeffs).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_cycle(&self, c: &Cycle) -> bool {
        c.coeffs.len() == self.edges.len() && self.boundary(c).iter().all(|&x| x == 0)
    }

    /// Boundary of face `p` as a cycle.
    pub fn face_boundary(&self, p: usize) -> Cycle {
        Cycle { coeffs: self.d2.iter().map(|r| r[p]).collect() }
    }

    /// The cycle pushed off to its left, as signed crossing counts per edge.
    /// A crossing counts `+1` when it leaves the polygon on the left of the
    /// edge's orientation.
    pub fn push_off(&self, c: &Cycle) -> Vec<i64> {
        // traversals with polygon on the left: (side, weight)
        let mut ins: Vec<Vec<(EdgeRef, i64)>> = vec![Vec::new(); self.num_vertices];
        let mut outs: Vec<Vec<(EdgeRef, i64)>> = vec![Vec::new(); self.num_vertices];
        for (k, &w) in c.coeffs.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let s = if w > 0 { self.edges[k].0 } else { self.edges[k].1 };
            let len = self.polygon_len(s.polygon);
            let cls = &self.corner_class[s.polygon];
            outs[cls[s.edge]].push((s, w.abs()));
            ins[cls[(s.edge + 1) % len]].push((s, w.abs()));
        }
        let mut dual = vec![0i64; self.edges.len()];
        for v in 0..self.num_vertices {
            let (mut a, mut b) = (ins[v].clone().into_iter(), outs[v].clone().into_iter());
            let (mut cur_in, mut cur_out) = (a.next(), b.next());
            while let (Some((s1, w1)), Some((s2, w2))) = (cur_in, cur_out) {
                let w = w1.min(w2);
                self.sweep(s1, s2, w, &mut dual);
                cur_in = if w1 > w { Some((s1, w1 - w)) } else { a.next() };
                cur_out = if w2 > w { Some((s2, w2 - w)) } else { b.next() };
            }
        }
        dual
    }

    // clockwise around the common vertex from the end of `s1` to the start of `s2`
    fn sweep(&self, s1: EdgeRef, s2: EdgeRef, w: i64, dual: &mut [i64]) {
        let (mut p, mut i) = (s1.polygon, (s1.edge + 1) % self.polygon_len(s1.polygon));
        let total: usize = self.sides.iter().map(Vec::len).sum();
        for _ in 0..=total {
            if (p, i) == (s2.polygon, s2.edge) {
                return;
            }
            let (k, sign) = self.side(p, i);
            dual[k] += sign * w;
            let f = self.glue[p][i];
            p = f.polygon;
            i = (f.edge + 1) % self.polygon_len(p);
        }
        unreachable!("corner walk left its vertex class");
    }

    /// Algebraic intersection of a cycle with a chain of crossings.
    pub fn pair_with_dual(&self, x: &Cycle, dual: &[i64]) -> i64 {
        -x.coeffs.iter().zip(dual).map(|(a, b)| a * b).sum::<i64>()
    }

    /// Whether a crossing chain is closed: it enters each polygon as often
    /// as it leaves.
    pub fn is_dual_cycle(&self, dual: &[i64]) -> bool {
        (0..self.num_faces).all(|p| self.d2.iter().zip(dual).map(|(r, d)| r[p] * d).sum::<i64>() == 0)
    }
}

/// `⟨x, y⟩`, with `⟨horizontal, vertical⟩ = 1` on the square torus.
pub fn intersection(c: &CellComplex, x: &Cycle, y: &Cycle) -> i64 {
    c.pair_with_dual(x, &c.push_off(y))
}

/// `∫_γ ω` for every cycle: the sum of its edge holonomies.
pub fn periods(s: &TranslationSurface, c: &CellComplex, cycles: &[Cycle]) -> Vec<CycNum> {
    cycles.iter().map(|z| cycle_period(s, c, z)).collect()
}

pub fn cycle_period(s: &TranslationSurface, c: &CellComplex, z: &Cycle) -> CycNum {
    let mut acc = CycNum::zero(s.order());
    for (k, &w) in z.coeffs.iter().enumerate() {
        if w != 0 {
            acc += &s.edge_vector(c.edges[k].0).scale_int(w);
        }
    }
    acc.reduced()
}

/// Coordinates of a cycle in a symplectic basis, read off from pairings.
pub fn coordinates(c: &CellComplex, basis: &SymplecticBasis, x: &Cycle) -> Vec<i64> {
    coordinates_of_dual(c, basis, &c.push_off(x))
}

/// As [`coordinates`], for a closed crossing chain.
pub fn coordinates_of_dual(c: &CellComplex, basis: &SymplecticBasis, dual: &[i64]) -> Vec<i64> {
    let g = basis.genus();
    // x = Σ α_i a_i + β_i b_i has ⟨a_i, x⟩ = β_i and ⟨b_i, x⟩ = -α_i
    let mut out = vec![0; 2 * g];
    for i in 0..g {
        out[i] = -c.pair_with_dual(&basis.cycles[g + i], dual);
        out[g + i] = c.pair_with_dual(&basis.cycles[i], dual);
    }
    out
}

/// `Σ x_i · basis_i` as an edge chain.
pub fn combine(basis: &SymplecticBasis, x: &[i64]) -> Cycle {
    let n = basis.cycles.first().map_or(0, |c| c.coeffs.len());
    let mut coeffs = vec![0; n];
    for (b, &w) in basis.cycles.iter().zip(x) {
        for (o, &e) in coeffs.iter_mut().zip(&b.coeffs) {
            *o += w * e;
        }
    }
    Cycle { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_2ngon, build_double_ngon, build_origami};

    #[test]
    fn cell_counts() {
        let t = build_complex(&build_origami(&[1], &[1]).unwrap());
        assert_eq!((t.num_vertices, t.num_edges(), t.num_faces), (1, 2, 1));
        let p = build_complex(&build_double_ngon(5).unwrap());
        assert_eq!((p.num_vertices, p.num_edges(), p.num_faces), (1, 5, 2));
        let d = build_complex(&build_2ngon(7).unwrap());
        assert_eq!((d.num_vertices, d.num_edges(), d.num_faces), (2, 7, 1));
        assert_eq!(d.euler_characteristic(), -4);
        let zero = mat_mul(&d.d1, &d.d2);
        assert!(zero.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn torus_pairing() {
        let t = build_complex(&build_origami(&[1], &[1]).unwrap());
        let h = Cycle { coeffs: vec![1, 0] };
        let v = Cycle { coeffs: vec![0, 1] };
        assert_eq!(intersection(&t, &h, &v), 1);
        assert_eq!(intersection(&t, &v, &h), -1);
        assert_eq!(intersection(&t, &h, &h), 0);
        assert!(t.is_dual_cycle(&t.push_off(&h)));
    }

    #[test]
    fn faces_have_zero_period() {
        let s = build_2ngon(5).unwrap();
        let c = build_complex(&s);
        for p in 0..c.num_faces {
            let b = c.face_boundary(p);
            assert!(c.is_cycle(&b));
            assert!(cycle_period(&s, &c, &b).is_zero());
        }
    }
}
