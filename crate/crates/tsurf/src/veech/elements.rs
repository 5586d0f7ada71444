use super::{
    default_rotations, parabolic_element, symmetry_search, trace_field, AffineAuto, Parabolic, TraceFieldReport,
    VeechError,
};
use crate::flow::Direction;
use crate::numfield::RealCyc;
use crate::surface::{Mat2, TranslationSurface};
use serde::Serialize;

/// Where a generated element comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Witness {
    Symmetry {
        auto: AffineAuto,
    },
    Multitwist {
        parabolic: Parabolic,
    },
    /// `elements[i] · elements[j]`.
    Product {
        i: usize,
        j: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedElement {
    pub matrix: Mat2,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedDirection {
    pub direction: Direction,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratedElements {
    pub elements: Vec<GeneratedElement>,
    pub skipped: Vec<SkippedDirection>,
}

impl GeneratedElements {
    pub fn traces(&self) -> Vec<RealCyc> {
        self.elements.iter().map(|e| e.matrix.trace().reduced()).collect()
    }

    pub fn trace_field(&self) -> Result<TraceFieldReport, VeechError> {
        trace_field(&self.traces())
    }
}

/// Distinct directions of the polygon edges, in edge order.
pub fn edge_directions(s: &TranslationSurface) -> Vec<Direction> {
    let mut out: Vec<Direction> = Vec::new();
    for (e, _) in s.edge_pairs() {
        if let Ok(d) = Direction::from_vector(&s.edge_vector(e)) {
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

/// Veech group elements with witnesses: one symmetry per rotation found by
/// [`symmetry_search`], a multitwist for each direction in `dirs` whose
/// moduli are commensurable (others are reported as skipped), and the
/// pairwise products involving a multitwist.
pub fn generated_elements(
    s: &TranslationSurface,
    dirs: &[Direction],
    cap: usize,
) -> Result<GeneratedElements, VeechError> {
    let mut base: Vec<GeneratedElement> = Vec::new();
    for auto in symmetry_search(s, &default_rotations(s))? {
        if base.iter().any(|e| e.matrix == auto.linear) {
            continue;
        }
        base.push(GeneratedElement { matrix: auto.linear.clone(), witness: Witness::Symmetry { auto } });
    }
    let results = crate::par::map(dirs, |d| parabolic_element(s, d, cap));
    let mut skipped = Vec::new();
    for (d, r) in dirs.iter().zip(results) {
        match r {
            Ok(p) => {
                base.push(GeneratedElement { matrix: p.matrix.clone(), witness: Witness::Multitwist { parabolic: p } })
            }
            Err(e @ (VeechError::NotJs(_) | VeechError::Undetermined { .. } | VeechError::Incommensurable(_))) => {
                skipped.push(SkippedDirection { direction: d.clone(), reason: e.to_string() })
            }
            Err(e) => return Err(e),
        }
    }
    let nb = base.len();
    let mut elements = base;
    for i in 0..nb {
        for j in i + 1..nb {
            // products of rotations are rotations already listed
            if matches!(elements[i].witness, Witness::Symmetry { .. })
                && matches!(elements[j].witness, Witness::Symmetry { .. })
            {
                continue;
            }
            let matrix = elements[i].matrix.try_mul(&elements[j].matrix)?.reduced();
            elements.push(GeneratedElement { matrix, witness: Witness::Product { i, j } });
        }
    }
    Ok(GeneratedElements { elements, skipped })
}
