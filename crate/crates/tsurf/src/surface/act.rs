use super::{Mat2, Polygon, SurfaceError, TranslationSurface};
use crate::numfield::lcm_u64;
use num_complex::Complex64;
use std::cmp::Ordering;

/// The distortion `A·s`: every vertex `z ↦ A z`, same gluing.
///
/// The result is expressed in the smallest order containing every new vertex.
pub fn act(s: &TranslationSurface, a: &Mat2) -> Result<TranslationSurface, SurfaceError> {
    if a.det_sign() != Ordering::Greater {
        return Err(SurfaceError::NonPositiveDeterminant);
    }
    let (alpha, beta) = a.alpha_beta()?;
    let mut images = Vec::with_capacity(s.num_polygons());
    let mut order = 1u64;
    for p in s.polygons() {
        let mut vs = Vec::with_capacity(p.len());
        for z in &p.vertices {
            let w = alpha.try_mul(z)?.try_add(&beta.try_mul(&z.conj())?)?.reduced();
            order = lcm_u64(order, w.order());
            vs.push(w);
        }
        images.push(Polygon { id: p.id.clone(), vertices: vs });
    }
    for p in images.iter_mut() {
        for v in p.vertices.iter_mut() {
            *v = v.lift(order)?;
        }
    }
    Ok(s.with_vertices(order, images))
}

/// A surface with double-precision vertices, produced when the matrix has no
/// exact representation. Nothing downstream accepts it as input.
#[derive(Clone, Debug)]
pub struct FloatSurface {
    pub polygons: Vec<Vec<Complex64>>,
    pub inexact: bool,
}

pub fn act_float(s: &TranslationSurface, m: [[f64; 2]; 2]) -> Result<FloatSurface, SurfaceError> {
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] <= 0.0 {
        return Err(SurfaceError::NonPositiveDeterminant);
    }
    let polygons = s
        .polygons()
        .iter()
        .map(|p| {
            p.vertices
                .iter()
                .map(|z| {
                    let c = z.approx();
                    Complex64::new(m[0][0] * c.re + m[0][1] * c.im, m[1][0] * c.re + m[1][1] * c.im)
                })
                .collect()
        })
        .collect();
    Ok(FloatSurface { polygons, inexact: true })
}
