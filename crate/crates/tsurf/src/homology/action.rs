use super::{
    combine, coordinates, coordinates_of_dual, cycle_period, CellComplex, Cycle, H1Action, HomologyError,
    SymplecticBasis,
};
use crate::surface::{Mat2, TranslationSurface};
use crate::veech::{parabolic_matrix, AffineAuto, MulticurveTwistData};
use num_traits::ToPrimitive;

/// Push a cycle forward along a cell-wise map.
fn push_forward(c: &CellComplex, auto: &AffineAuto, x: &Cycle) -> Result<Cycle, HomologyError> {
    let np = c.num_faces;
    if auto.polygon_map.len() != np || auto.shifts.len() != np {
        return Err(HomologyError::NotAnAutomorphism);
    }
    let mut out = vec![0; c.num_edges()];
    for (k, &w) in x.coeffs.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let e = c.edges[k].0;
        let q = auto.polygon_map[e.polygon];
        if q >= np || c.polygon_len(q) != c.polygon_len(e.polygon) {
            return Err(HomologyError::NotAnAutomorphism);
        }
        let (kk, sign) = c.side(q, e.edge + auto.shifts[e.polygon]);
        out[kk] += sign * w;
    }
    let y = Cycle { coeffs: out };
    if !c.is_cycle(&y) {
        return Err(HomologyError::NotAnAutomorphism);
    }
    Ok(y)
}

/// The induced map on `H₁`.
pub fn auto_action(c: &CellComplex, auto: &AffineAuto, basis: &SymplecticBasis) -> Result<H1Action, HomologyError> {
    let n = basis.cycles.len();
    let mut m = vec![vec![0; n]; n];
    for (j, z) in basis.cycles.iter().enumerate() {
        let img = coordinates(c, basis, &push_forward(c, auto, z)?);
        for i in 0..n {
            m[i][j] = img[i];
        }
    }
    let a = H1Action { m };
    if !a.is_symplectic() {
        return Err(HomologyError::NotAnAutomorphism);
    }
    Ok(a)
}

/// Class of a cylinder core curve, given as the sides it leaves through.
pub fn core_cycle(
    c: &CellComplex,
    basis: &SymplecticBasis,
    core: &[crate::surface::EdgeRef],
) -> Result<Vec<i64>, HomologyError> {
    let mut dual = vec![0; c.num_edges()];
    for e in core {
        let (k, sign) = c.side(e.polygon, e.edge);
        dual[k] += sign;
    }
    if !c.is_dual_cycle(&dual) {
        return Err(HomologyError::NotACycle);
    }
    Ok(coordinates_of_dual(c, basis, &dual))
}

/// The multitwist `x ↦ x + Σ m_i ⟨c_i, x⟩ c_i` over the cylinder cores.
pub fn twist_action(
    c: &CellComplex,
    twist: &MulticurveTwistData,
    basis: &SymplecticBasis,
) -> Result<H1Action, HomologyError> {
    let n = basis.cycles.len();
    let g = n / 2;
    let mut m = super::identity(n);
    for (cyl, power) in twist.cylinders.iter().zip(&twist.powers) {
        let p = power.to_i64().ok_or_else(|| HomologyError::PowerTooLarge(power.to_string()))?;
        let core = core_cycle(c, basis, &cyl.core)?;
        // ⟨core, e_j⟩ for basis vector e_j: row of coreᵀ J
        let row: Vec<i64> = (0..n).map(|j| if j < g { -core[g + j] } else { core[j - g] }).collect();
        for i in 0..n {
            for j in 0..n {
                m[i][j] += p * core[i] * row[j];
            }
        }
    }
    let a = H1Action { m };
    if !a.is_symplectic() {
        return Err(HomologyError::NotSymplectic);
    }
    Ok(a)
}

/// Checks `∫_{Mγ} ω = A · ∫_γ ω` for every basis cycle, where planar
/// vectors are identified with complex numbers. Equivalently the dual map
/// acts on the span of `Re ω` and `Im ω` by `Aᵀ`.
pub fn period_equivariance(
    s: &TranslationSurface,
    c: &CellComplex,
    basis: &SymplecticBasis,
    action: &H1Action,
    a: &Mat2,
) -> Result<(), HomologyError> {
    let mut bad = Vec::new();
    for (j, z) in basis.cycles.iter().enumerate() {
        let col: Vec<i64> = action.m.iter().map(|r| r[j]).collect();
        let lhs = cycle_period(s, c, &combine(basis, &col));
        let rhs = a.apply(&cycle_period(s, c, z))?;
        if lhs != rhs {
            bad.push(j);
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(HomologyError::CheckFailed(bad))
    }
}

/// [`period_equivariance`] for an affine automorphism.
pub fn canonical_subspace_check(
    s: &TranslationSurface,
    c: &CellComplex,
    auto: &AffineAuto,
    basis: &SymplecticBasis,
) -> Result<(), HomologyError> {
    let m = auto_action(c, auto, basis)?;
    period_equivariance(s, c, basis, &m, &auto.linear)
}

/// The derivative of the multitwist, for use with [`period_equivariance`].
pub fn twist_matrix(twist: &MulticurveTwistData) -> Result<Mat2, crate::veech::VeechError> {
    parabolic_matrix(&twist.vector, &twist.total_modulus)
}
