//! Translation surfaces presented as convex polygons glued by translations.

mod act;
mod billiard;
mod builders;
mod mat2;

pub use act::{act, act_float, FloatSurface};
pub use billiard::{billiard_table, build_billiard, BilliardMode, BilliardTable};
pub use builders::{build_2ngon, build_double_ngon, build_origami, build_wiman, wiman_index};
pub use mat2::Mat2;

use crate::numfield::{lcm_u64, CycNum, FieldError, RealCyc};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Edge `edge` of polygon `polygon`, running from vertex `edge` to `edge + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub polygon: usize,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(polygon: usize, edge: usize) -> Self {
        EdgeRef { polygon, edge }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.polygon, self.edge)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub id: String,
    pub vertices: Vec<CycNum>,
}

impl Polygon {
    pub fn new(id: impl Into<String>, vertices: Vec<CycNum>) -> Self {
        Polygon { id: id.into(), vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &CycNum {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn edge_vector(&self, i: usize) -> CycNum {
        self.vertex(i + 1) - self.vertex(i)
    }
}

/// Unvalidated surface description, as read from or written to JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceData {
    pub order: u64,
    pub polygons: Vec<Polygon>,
    pub gluing: Vec<(EdgeRef, EdgeRef)>,
}

/// One reason a [`SurfaceData`] fails to describe a translation surface.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Issue {
    #[error("polygon {polygon} has fewer than three vertices")]
    TooFewVertices { polygon: String },
    #[error("polygon {polygon} is not strictly convex and counter-clockwise")]
    NonConvexPolygon { polygon: String },
    #[error("edges {0} and {1} are not opposite translates")]
    GluingMismatch(EdgeRef, EdgeRef),
    #[error("edge {0} is glued more than once or to itself")]
    DuplicateEdge(EdgeRef),
    #[error("edge {0} is not glued")]
    UnpairedEdge(EdgeRef),
    #[error("edge {0} does not exist")]
    NoSuchEdge(EdgeRef),
    #[error("the polygons do not form a connected surface")]
    Disconnected,
    #[error("vertex class {class} does not have angle a positive multiple of 2π")]
    BadConeAngle { class: usize },
    #[error("vertex coordinates do not fit order {order}: {detail}")]
    BadOrder { order: u64, detail: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid surface: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Issue>),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("polygon is not rational (reflection group exceeds {bound} elements)")]
    IrrationalPolygon { bound: usize },
    #[error("matrix determinant is not positive")]
    NonPositiveDeterminant,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("parse error: {0}")]
    Parse(String),
}

impl SurfaceError {
    pub fn issues(&self) -> &[Issue] {
        match self {
            SurfaceError::Invalid(v) => v,
            _ => &[],
        }
    }
}

/// A vertex class: the corners meeting at one point, in counter-clockwise
/// order, with total angle `2π · multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub corners: Vec<(usize, usize)>,
    pub multiplicity: usize,
}

/// A validated translation surface. Every vertex lives in order `N`.
#[derive(Clone, Debug)]
pub struct TranslationSurface {
    order: u64,
    polygons: Vec<Polygon>,
    glue: Vec<Vec<EdgeRef>>,
    vertex_class: Vec<Vec<usize>>,
    classes: Vec<VertexClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub genus: usize,
    /// `(vertex class, multiplicity)` for every class, including angle 2π.
    pub cone_points: Vec<(usize, usize)>,
    /// `m - 1` for every class with `m ≥ 2`, in decreasing order.
    pub zero_orders: Vec<usize>,
    pub area: RealCyc,
    pub euler_characteristic: i64,
}

/// Sign of `Im(conj(a) b)`, the planar cross product of `a` and `b`.
pub fn cross_sign(a: &CycNum, b: &CycNum) -> Ordering {
    (a.conj() * b).im_sign()
}

/// Sign of `Re(conj(a) b)`, the planar dot product.
pub fn dot_sign(a: &CycNum, b: &CycNum) -> Ordering {
    (a.conj() * b).re_sign()
}

// d lies in the half-open sector (u, w] of angle less than π
fn in_sector(u: &CycNum, w: &CycNum, d: &CycNum) -> bool {
    cross_sign(u, d) == Ordering::Greater && cross_sign(d, w) != Ordering::Less
}

/// Full validation of raw data.
pub fn validate(data: &SurfaceData) -> Result<TranslationSurface, SurfaceError> {
    let mut issues = Vec::new();
    let n = data.order;
    if n == 0 {
        return Err(SurfaceError::Invalid(vec![Issue::BadOrder { order: n, detail: "zero order".into() }]));
    }
    // bring every vertex into order N
    let mut polygons = Vec::with_capacity(data.polygons.len());
    for p in &data.polygons {
        let mut vs = Vec::with_capacity(p.vertices.len());
        for v in &p.vertices {
            let v = if n % v.order() == 0 { v.lift(n) } else { v.reduced().lift(n) };
            match v {
                Ok(v) => vs.push(v),
                Err(e) => {
                    issues.push(Issue::BadOrder { order: n, detail: e.to_string() });
                    vs.push(CycNum::zero(n));
                }
            }
        }
        polygons.push(Polygon { id: p.id.clone(), vertices: vs });
    }
    if !issues.is_empty() {
        return Err(SurfaceError::Invalid(issues));
    }
    for p in &polygons {
        if p.len() < 3 {
            issues.push(Issue::TooFewVertices { polygon: p.id.clone() });
            continue;
        }
        let k = p.len();
        let convex = (0..k).all(|i| {
            let e = p.edge_vector(i);
            (0..k)
                .filter(|&j| j != i && j != (i + 1) % k)
                .all(|j| cross_sign(&e, &(p.vertex(j) - p.vertex(i))) == Ordering::Greater)
        });
        if !convex {
            issues.push(Issue::NonConvexPolygon { polygon: p.id.clone() });
        }
    }
    if polygons.is_empty() {
        issues.push(Issue::Disconnected);
    }
    let mut glue: Vec<Vec<Option<EdgeRef>>> = polygons.iter().map(|p| vec![None; p.len()]).collect();
    let exists = |e: &EdgeRef| e.polygon < polygons.len() && e.edge < polygons[e.polygon].len();
    for &(a, b) in &data.gluing {
        let mut ok = true;
        for e in [a, b] {
            if !exists(&e) {
                issues.push(Issue::NoSuchEdge(e));
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        if a == b || glue[a.polygon][a.edge].is_some() || glue[b.polygon][b.edge].is_some() {
            issues.push(Issue::DuplicateEdge(if a == b || glue[a.polygon][a.edge].is_some() { a } else { b }));
            continue;
        }
        glue[a.polygon][a.edge] = Some(b);
        glue[b.polygon][b.edge] = Some(a);
        let va = polygons[a.polygon].edge_vector(a.edge);
        let vb = polygons[b.polygon].edge_vector(b.edge);
        if !(va + vb).is_zero() {
            issues.push(Issue::GluingMismatch(a, b));
        }
    }
    for (pi, g) in glue.iter().enumerate() {
        for (ei, e) in g.iter().enumerate() {
            if e.is_none() {
                issues.push(Issue::UnpairedEdge(EdgeRef::new(pi, ei)));
            }
        }
    }
    if !issues.is_empty() {
        return Err(SurfaceError::Invalid(issues));
    }
    let glue: Vec<Vec<EdgeRef>> = glue.into_iter().map(|g| g.into_iter().map(Option::unwrap).collect()).collect();
    // connectivity
    let mut seen = vec![false; polygons.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for e in &glue[p] {
            if !seen[e.polygon] {
                seen[e.polygon] = true;
                stack.push(e.polygon);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(SurfaceError::Invalid(vec![Issue::Disconnected]));
    }
    // corner walks: the corner after (P, i) counter-clockwise is the start
    // of the edge glued to (P, i-1)
    let mut vertex_class: Vec<Vec<usize>> = polygons.iter().map(|p| vec![usize::MAX; p.len()]).collect();
    let mut classes = Vec::new();
    let d1 = CycNum::one(n);
    // a second, non-real reference direction for the cross-check
    let d2 = CycNum::zeta(lcm_u64(n, 4), 1);
    for p in 0..polygons.len() {
        for i in 0..polygons[p].len() {
            if vertex_class[p][i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut corners = Vec::new();
            let (mut cp, mut ci) = (p, i);
            loop {
                vertex_class[cp][ci] = id;
                corners.push((cp, ci));
                let k = polygons[cp].len();
                let next = glue[cp][(ci + k - 1) % k];
                (cp, ci) = (next.polygon, next.edge);
                if (cp, ci) == (p, i) {
                    break;
                }
            }
            let count = |d: &CycNum| {
                corners
                    .iter()
                    .filter(|&&(cp, ci)| {
                        let poly = &polygons[cp];
                        let k = poly.len();
                        let u = poly.edge_vector(ci);
                        let w = -poly.edge_vector(ci + k - 1);
                        in_sector(&u, &w, d)
                    })
                    .count()
            };
            let m1 = count(&d1);
            let m2 = count(&d2);
            if m1 == 0 || m1 != m2 {
                issues.push(Issue::BadConeAngle { class: id });
            }
            classes.push(VertexClass { corners, multiplicity: m1 });
        }
    }
    if !issues.is_empty() {
        return Err(SurfaceError::Invalid(issues));
    }
    Ok(TranslationSurface { order: n, polygons, glue, vertex_class, classes })
}

impl TranslationSurface {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn polygon(&self, p: usize) -> &Polygon {
        &self.polygons[p]
    }

    pub fn num_polygons(&self) -> usize {
        self.polygons.len()
    }

    /// The edge glued to `e`.
    pub fn glued(&self, e: EdgeRef) -> EdgeRef {
        self.glue[e.polygon][e.edge]
    }

    pub fn edge_vector(&self, e: EdgeRef) -> CycNum {
        self.polygons[e.polygon].edge_vector(e.edge)
    }

    /// All glued pairs `(e, f)` with `e < f`.
    pub fn edge_pairs(&self) -> Vec<(EdgeRef, EdgeRef)> {
        let mut out = Vec::new();
        for (p, g) in self.glue.iter().enumerate() {
            for (i, f) in g.iter().enumerate() {
                let e = EdgeRef::new(p, i);
                if e < *f {
                    out.push((e, *f));
                }
            }
        }
        out
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        self.polygons.iter().enumerate().flat_map(|(p, poly)| (0..poly.len()).map(move |i| EdgeRef::new(p, i)))
    }

    pub fn vertex_class(&self, p: usize, i: usize) -> usize {
        self.vertex_class[p][i % self.polygons[p].len()]
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = self.classes.len() as i64;
        let e = self.edge_pairs().len() as i64;
        let f = self.polygons.len() as i64;
        v - e + f
    }

    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    /// Exact area by the shoelace formula.
    pub fn area(&self) -> RealCyc {
        let mut s = CycNum::zero(self.order);
        for p in &self.polygons {
            for i in 0..p.len() {
                s += &(p.vertex(i).conj() * p.vertex(i + 1));
            }
        }
        s.im().scale(&num_rational::BigRational::new(1.into(), 2.into())).reduced()
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        let cone_points: Vec<(usize, usize)> =
            self.classes.iter().enumerate().map(|(i, c)| (i, c.multiplicity)).collect();
        let mut zero_orders: Vec<usize> =
            self.classes.iter().filter(|c| c.multiplicity >= 2).map(|c| c.multiplicity - 1).collect();
        zero_orders.sort_unstable_by(|a, b| b.cmp(a));
        SurfaceInvariants {
            genus: self.genus(),
            cone_points,
            zero_orders,
            area: self.area(),
            euler_characteristic: self.euler_characteristic(),
        }
    }

    pub fn to_data(&self) -> SurfaceData {
        SurfaceData { order: self.order, polygons: self.polygons.clone(), gluing: self.edge_pairs() }
    }

    /// Same surface with every vertex expressed in order `m`.
    pub fn lifted(&self, m: u64) -> Result<TranslationSurface, FieldError> {
        let mut s = self.clone();
        for p in s.polygons.iter_mut() {
            for v in p.vertices.iter_mut() {
                *v = v.lift(m)?;
            }
        }
        s.order = m;
        Ok(s)
    }

    pub(crate) fn with_vertices(&self, order: u64, polygons: Vec<Polygon>) -> TranslationSurface {
        TranslationSurface { order, polygons, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        self.to_data().to_json()
    }

    pub fn from_json(s: &str) -> Result<TranslationSurface, SurfaceError> {
        validate(&SurfaceData::from_json(s)?)
    }
}

/// Invariants of a validated surface.
pub fn invariants(s: &TranslationSurface) -> SurfaceInvariants {
    s.invariants()
}

#[derive(Serialize, Deserialize)]
struct WirePolygon {
    id: String,
    vertices: Vec<CycNum>,
}

#[derive(Serialize, Deserialize)]
struct WireSurface {
    order: u64,
    polygons: Vec<WirePolygon>,
    gluing: Vec<((String, usize), (String, usize))>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<serde_json::Value>,
}

impl SurfaceData {
    fn to_wire(&self, metadata: Option<serde_json::Value>) -> WireSurface {
        let id = |e: &EdgeRef| (self.polygons[e.polygon].id.clone(), e.edge);
        WireSurface {
            order: self.order,
            polygons: self
                .polygons
                .iter()
                .map(|p| WirePolygon { id: p.id.clone(), vertices: p.vertices.clone() })
                .collect(),
            gluing: self.gluing.iter().map(|(a, b)| (id(a), id(b))).collect(),
            metadata,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_wire(None)).expect("serializable")
    }

    /// JSON with an extra `metadata` object that the parser ignores.
    pub fn to_json_with_metadata(&self, metadata: serde_json::Value) -> String {
        serde_json::to_string_pretty(&self.to_wire(Some(metadata))).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<SurfaceData, SurfaceError> {
        let w: WireSurface = serde_json::from_str(s).map_err(|e| SurfaceError::Parse(e.to_string()))?;
        let mut index = HashMap::new();
        for (i, p) in w.polygons.iter().enumerate() {
            if index.insert(p.id.clone(), i).is_some() {
                return Err(SurfaceError::Parse(format!("duplicate polygon id {:?}", p.id)));
            }
        }
        let look = |(id, e): &(String, usize)| -> Result<EdgeRef, SurfaceError> {
            let p = index.get(id).ok_or_else(|| SurfaceError::Parse(format!("unknown polygon id {id:?}")))?;
            Ok(EdgeRef::new(*p, *e))
        };
        let gluing =
            w.gluing.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>, SurfaceError>>()?;
        Ok(SurfaceData {
            order: w.order,
            polygons: w.polygons.into_iter().map(|p| Polygon { id: p.id, vertices: p.vertices }).collect(),
            gluing,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64) -> CycNum {
        CycNum::from_int_in(re, 4) + CycNum::zeta(4, 1).scale_int(im)
    }

    fn square(gluing: Vec<(EdgeRef, EdgeRef)>) -> SurfaceData {
        SurfaceData { order: 4, polygons: vec![Polygon::new("S", vec![c(0, 0), c(1, 0), c(1, 1), c(0, 1)])], gluing }
    }

    #[test]
    fn torus_validates() {
        let s =
            validate(&square(vec![(EdgeRef::new(0, 0), EdgeRef::new(0, 2)), (EdgeRef::new(0, 1), EdgeRef::new(0, 3))]))
                .unwrap();
        assert_eq!(s.classes().len(), 1);
        assert_eq!(s.classes()[0].multiplicity, 1);
        let inv = s.invariants();
        assert_eq!(inv.genus, 1);
        assert!(inv.area.is_one());
        assert!(inv.zero_orders.is_empty());
    }

    #[test]
    fn mismatched_gluing() {
        let err =
            validate(&square(vec![(EdgeRef::new(0, 3), EdgeRef::new(0, 2)), (EdgeRef::new(0, 0), EdgeRef::new(0, 1))]))
                .unwrap_err();
        assert!(err.issues().iter().any(|i| matches!(i, Issue::GluingMismatch(..))));
    }

    #[test]
    fn clockwise_polygon_rejected() {
        let data = SurfaceData {
            order: 4,
            polygons: vec![Polygon::new("S", vec![c(0, 0), c(0, 1), c(1, 1), c(1, 0)])],
            gluing: vec![(EdgeRef::new(0, 0), EdgeRef::new(0, 2)), (EdgeRef::new(0, 1), EdgeRef::new(0, 3))],
        };
        let err = validate(&data).unwrap_err();
        assert!(err.issues().iter().any(|i| matches!(i, Issue::NonConvexPolygon { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let data = square(vec![(EdgeRef::new(0, 0), EdgeRef::new(0, 2)), (EdgeRef::new(0, 1), EdgeRef::new(0, 3))]);
        let s = data.to_json();
        assert_eq!(SurfaceData::from_json(&s).unwrap(), data);
        let with_meta = data.to_json_with_metadata(serde_json::json!({"genus": 1}));
        assert_eq!(SurfaceData::from_json(&with_meta).unwrap(), data);
    }
}
