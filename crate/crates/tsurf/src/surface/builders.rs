//! The standard families: origamis, regular polygons and the Wiman triangles.

use super::{validate, EdgeRef, Polygon, SurfaceData, SurfaceError, TranslationSurface};
use crate::numfield::CycNum;

fn bad(msg: impl Into<String>) -> SurfaceError {
    SurfaceError::BadParameter(msg.into())
}

fn check_perm(p: &[usize], d: usize, name: &str) -> Result<(), SurfaceError> {
    if p.len() != d {
        return Err(bad(format!("{name} has length {}, expected {d}", p.len())));
    }
    let mut seen = vec![false; d];
    for &x in p {
        if x == 0 || x > d || seen[x - 1] {
            return Err(bad(format!("{name} is not a permutation of 1..{d}")));
        }
        seen[x - 1] = true;
    }
    Ok(())
}

/// Unit squares `1..d`; the right side of square `i` is glued to the left
/// side of `h(i)` and its top to the bottom of `v(i)`. Permutations are
/// 1-based images.
pub fn build_origami(h: &[usize], v: &[usize]) -> Result<TranslationSurface, SurfaceError> {
    let d = h.len();
    if d == 0 {
        return Err(bad("origami needs at least one square"));
    }
    check_perm(h, d, "h")?;
    check_perm(v, d, "v")?;
    let i = CycNum::zeta(4, 1);
    let polygons = (0..d)
        .map(|k| {
            let x = CycNum::from_int_in(k as i64, 4);
            let x1 = CycNum::from_int_in(k as i64 + 1, 4);
            Polygon::new(format!("S{}", k + 1), vec![x.clone(), x1.clone(), &x1 + &i, &x + &i])
        })
        .collect();
    let mut gluing = Vec::with_capacity(2 * d);
    for k in 0..d {
        gluing.push((EdgeRef::new(k, 1), EdgeRef::new(h[k] - 1, 3)));
        gluing.push((EdgeRef::new(k, 2), EdgeRef::new(v[k] - 1, 0)));
    }
    validate(&SurfaceData { order: 4, polygons, gluing })
}

/// The regular `2n`-gon on the `2n`-th roots of unity with opposite sides
/// identified (`n` odd). Side `(n-1)/2` is horizontal.
pub fn build_2ngon(n: usize) -> Result<TranslationSurface, SurfaceError> {
    if n < 3 || n % 2 == 0 {
        return Err(bad(format!("2n-gon needs odd n >= 3, got {n}")));
    }
    let order = 2 * n as u64;
    let vs = (0..2 * n).map(|j| CycNum::zeta(order, j as i64)).collect();
    let gluing = (0..n).map(|j| (EdgeRef::new(0, j), EdgeRef::new(0, j + n))).collect();
    validate(&SurfaceData { order, polygons: vec![Polygon::new("P", vs)], gluing })
}

/// A regular `n`-gon on the `n`-th roots of unity and its point reflection,
/// parallel sides glued (`n` odd). Side `(n-1)/2` is vertical.
pub fn build_double_ngon(n: usize) -> Result<TranslationSurface, SurfaceError> {
    if n < 5 || n % 2 == 0 {
        return Err(bad(format!("double n-gon needs odd n >= 5, got {n}")));
    }
    let order = n as u64;
    let a = (0..n).map(|j| CycNum::zeta(order, j as i64)).collect();
    let b = (0..n).map(|j| -CycNum::zeta(order, j as i64)).collect();
    let gluing = (0..n).map(|j| (EdgeRef::new(0, j), EdgeRef::new(1, j))).collect();
    validate(&SurfaceData { order, polygons: vec![Polygon::new("A", a), Polygon::new("B", b)], gluing })
}

/// Polygon index of `T_{m,ε}` in [`build_wiman`].
pub fn wiman_index(n: usize, m: usize, eps: i32) -> usize {
    m % n + if eps < 0 { n } else { 0 }
}

/// The `2n` triangles `T_{m,ε} = (0, εζ^{k(2m-1)}, εζ^{k(2m+1)})` with
/// `ζ = ζ_{2n}` and `n = 2g+1`. Side 2 of `T_{m,ε}` meets side 0 of
/// `T_{m+1,ε}`; the outer sides of `T_{m,1}` and `T_{m,-1}` are glued.
pub fn build_wiman(g: usize, k: usize) -> Result<TranslationSurface, SurfaceError> {
    if g < 1 || k < 1 || k > g {
        return Err(bad(format!("need 1 <= k <= g, got g={g}, k={k}")));
    }
    let n = 2 * g + 1;
    let order = 2 * n as u64;
    let mut polygons = Vec::with_capacity(2 * n);
    for eps in [1i32, -1] {
        for m in 0..n {
            let e = |x: i64| {
                let z = CycNum::zeta(order, x);
                if eps < 0 {
                    -z
                } else {
                    z
                }
            };
            let km = (k * (2 * m)) as i64;
            let vs = vec![CycNum::zero(order), e(km - k as i64), e(km + k as i64)];
            polygons.push(Polygon::new(format!("T{}{}", m, if eps > 0 { "+" } else { "-" }), vs));
        }
    }
    let mut gluing = Vec::with_capacity(3 * n);
    for eps in [1, -1] {
        for m in 0..n {
            gluing.push((EdgeRef::new(wiman_index(n, m, eps), 2), EdgeRef::new(wiman_index(n, m + 1, eps), 0)));
        }
    }
    for m in 0..n {
        gluing.push((EdgeRef::new(wiman_index(n, m, 1), 1), EdgeRef::new(wiman_index(n, m, -1), 1)));
    }
    validate(&SurfaceData { order, polygons, gluing })
}
