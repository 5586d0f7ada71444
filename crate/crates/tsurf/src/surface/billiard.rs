//! Unfolding rational polygons into translation surfaces.

use super::{cross_sign, validate, EdgeRef, Polygon, SurfaceData, SurfaceError, TranslationSurface};
use crate::numfield::{cos2pi, lcm_u64, CycNum};
use std::cmp::Ordering;

/// A linear isometry `z ↦ u z` or `z ↦ u z̄` with `|u| = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Lin {
    Rot(CycNum),
    Ref(CycNum),
}

impl Lin {
    fn apply(&self, z: &CycNum) -> CycNum {
        match self {
            Lin::Rot(u) => u * z,
            Lin::Ref(u) => u * &z.conj(),
        }
    }

    // self ∘ other
    fn compose(&self, other: &Lin) -> Lin {
        match (self, other) {
            (Lin::Rot(u), Lin::Rot(v)) => Lin::Rot(u * v),
            (Lin::Rot(u), Lin::Ref(v)) => Lin::Ref(u * v),
            (Lin::Ref(u), Lin::Rot(v)) => Lin::Ref(u * &v.conj()),
            (Lin::Ref(u), Lin::Ref(v)) => Lin::Rot(u * &v.conj()),
        }
    }

    fn reverses(&self) -> bool {
        matches!(self, Lin::Ref(_))
    }
}

/// How copies of the polygon that differ only by a translation are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BilliardMode {
    /// One copy per class of translation-equivalent images (the usual
    /// billiard surface).
    #[default]
    Quotient,
    /// One copy per group element, even when two copies are translates.
    Literal,
}

/// The tables used throughout: the unit square, the isosceles triangle with
/// apex angle `2kπ/n` and the right triangle with angle `kπ/n` at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BilliardTable {
    Square,
    Isosceles { g: usize, k: usize },
    Right { g: usize, k: usize },
}

pub fn billiard_table(t: BilliardTable) -> Result<Polygon, SurfaceError> {
    let check = |g: usize, k: usize| {
        if g < 1 || k < 1 || k > g {
            Err(SurfaceError::BadParameter(format!("need 1 <= k <= g, got g={g}, k={k}")))
        } else {
            Ok(2 * g + 1)
        }
    };
    Ok(match t {
        BilliardTable::Square => {
            let i = CycNum::zeta(4, 1);
            Polygon::new("P", vec![CycNum::zero(4), CycNum::one(4), CycNum::one(4) + &i, i])
        }
        BilliardTable::Isosceles { g, k } => {
            let n = check(g, k)? as u64;
            Polygon::new(
                "P",
                vec![CycNum::zero(2 * n), CycNum::zeta(2 * n, -(k as i64)), CycNum::zeta(2 * n, k as i64)],
            )
        }
        BilliardTable::Right { g, k } => {
            let n = check(g, k)? as i64;
            let c = cos2pi(k as i64, 2 * n)?.into_inner();
            Polygon::new("P", vec![CycNum::zero(2 * n as u64), c, CycNum::zeta(2 * n as u64, k as i64)])
        }
    })
}

/// The translation surface obtained by unfolding the billiard in `p`.
pub fn build_billiard(p: &Polygon, mode: BilliardMode) -> Result<TranslationSurface, SurfaceError> {
    let k = p.len();
    if k < 3 {
        return Err(SurfaceError::BadParameter("polygon needs three vertices".into()));
    }
    let order = p.vertices.iter().fold(1, |acc, v| lcm_u64(acc, v.order()));
    let verts: Vec<CycNum> = p.vertices.iter().map(|v| v.lift(order)).collect::<Result<_, _>>()?;
    let base = Polygon::new(p.id.clone(), verts);
    for i in 0..k {
        let e = base.edge_vector(i);
        for j in 0..k {
            if j != i && j != (i + 1) % k && cross_sign(&e, &(base.vertex(j) - base.vertex(i))) != Ordering::Greater {
                return Err(SurfaceError::BadParameter("polygon must be strictly convex and counter-clockwise".into()));
            }
        }
    }
    // reflections in the sides: z ↦ (w/w̄) z̄
    let sigma: Vec<Lin> = (0..k)
        .map(|s| {
            let w = base.edge_vector(s);
            Ok(Lin::Ref(w.try_div(&w.conj())?))
        })
        .collect::<Result<_, SurfaceError>>()?;
    let bound = 2 * lcm_u64(order, 2) as usize;
    let mut group = vec![Lin::Rot(CycNum::one(order))];
    let mut head = 0;
    while head < group.len() {
        let t = group[head].clone();
        head += 1;
        for s in &sigma {
            let x = t.compose(s);
            if !group.contains(&x) {
                group.push(x);
                if group.len() > bound {
                    return Err(SurfaceError::IrrationalPolygon { bound });
                }
            }
        }
    }
    // copy for each element: counter-clockwise vertices and the side of P
    // that each copy edge comes from
    let copies: Vec<(Vec<CycNum>, Vec<usize>)> = group
        .iter()
        .map(|t| {
            if t.reverses() {
                let vs = (0..k).map(|m| t.apply(base.vertex(k - m))).collect();
                let sides = (0..k).map(|m| (2 * k - 1 - m) % k).collect();
                (vs, sides)
            } else {
                ((0..k).map(|m| t.apply(base.vertex(m))).collect(), (0..k).collect())
            }
        })
        .collect();
    let edge_vecs: Vec<Vec<CycNum>> =
        copies.iter().map(|(vs, _)| (0..k).map(|m| &vs[(m + 1) % k] - &vs[m]).collect()).collect();
    let translates = |a: &[CycNum], b: &[CycNum]| (0..k).any(|r| (0..k).all(|m| a[m] == b[(m + r) % k]));
    let mut class_of = vec![usize::MAX; group.len()];
    let mut reps: Vec<usize> = Vec::new();
    for t in 0..group.len() {
        if mode == BilliardMode::Quotient {
            if let Some(c) = reps.iter().position(|&r| translates(&edge_vecs[r], &edge_vecs[t])) {
                class_of[t] = c;
                continue;
            }
        }
        class_of[t] = reps.len();
        reps.push(t);
    }
    let mut glue: Vec<Vec<Option<EdgeRef>>> = vec![vec![None; k]; reps.len()];
    for (c, &t) in reps.iter().enumerate() {
        for m in 0..k {
            let side = copies[t].1[m];
            let nb = group[t].compose(&sigma[side]);
            let nt = group.iter().position(|x| *x == nb).expect("group is closed");
            let c2 = class_of[nt];
            let target = -&edge_vecs[t][m];
            let m2 = edge_vecs[reps[c2]]
                .iter()
                .position(|w| *w == target)
                .ok_or_else(|| SurfaceError::BadParameter("unfolded copies do not match up".into()))?;
            let f = EdgeRef::new(c2, m2);
            match glue[c][m] {
                Some(prev) if prev != f => {
                    return Err(SurfaceError::BadParameter("inconsistent unfolding".into()));
                }
                _ => glue[c][m] = Some(f),
            }
        }
    }
    let mut gluing = Vec::new();
    for (c, row) in glue.iter().enumerate() {
        for (m, f) in row.iter().enumerate() {
            let e = EdgeRef::new(c, m);
            let f = f.expect("every edge assigned");
            if glue[f.polygon][f.edge] != Some(e) {
                return Err(SurfaceError::BadParameter("unfolding is not an involution".into()));
            }
            if e < f {
                gluing.push((e, f));
            }
        }
    }
    let polygons = reps.iter().enumerate().map(|(c, &t)| Polygon::new(format!("C{c}"), copies[t].0.clone())).collect();
    validate(&SurfaceData { order, polygons, gluing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_wiman;

    #[test]
    fn square_unfolds_to_torus() {
        let sq = billiard_table(BilliardTable::Square).unwrap();
        let lit = build_billiard(&sq, BilliardMode::Literal).unwrap();
        assert_eq!(lit.num_polygons(), 4);
        assert_eq!(lit.genus(), 1);
        let q = build_billiard(&sq, BilliardMode::Quotient).unwrap();
        assert_eq!(q.genus(), 1);
    }

    #[test]
    fn right_triangle_has_twenty_copies() {
        let t = billiard_table(BilliardTable::Right { g: 2, k: 1 }).unwrap();
        let s = build_billiard(&t, BilliardMode::Quotient).unwrap();
        assert_eq!(s.num_polygons(), 20);
        assert_eq!(s.genus(), 2);
    }

    #[test]
    fn isosceles_matches_wiman() {
        let t = billiard_table(BilliardTable::Isosceles { g: 2, k: 1 }).unwrap();
        let s = build_billiard(&t, BilliardMode::Quotient).unwrap();
        let w = build_wiman(2, 1).unwrap();
        assert_eq!(s.num_polygons(), 10);
        assert_eq!(s.invariants().zero_orders, w.invariants().zero_orders);
        assert_eq!(s.area(), w.area());
    }

    #[test]
    fn irrational_polygon_rejected() {
        // legs 1 and 2: the acute angles are irrational multiples of π
        let i = CycNum::zeta(4, 1);
        let p = Polygon::new("P", vec![CycNum::zero(4), CycNum::from_int_in(2, 4), i]);
        assert!(matches!(build_billiard(&p, BilliardMode::Literal), Err(SurfaceError::IrrationalPolygon { .. })));
    }
}
