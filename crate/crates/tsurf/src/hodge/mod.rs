//! The Wiman family: all differentials `ω_1..ω_g` of `y² = x^n - 1`,
//! `n = 2g + 1`, on one combinatorial surface.
//!
//! `build_wiman(g, k)` glues the same `2n` triangles for every `k`; only the
//! shapes change. So one cell complex and one symplectic basis serve all
//! `k`, and the `k`-th flat structure gives the periods of `ω_k` up to a
//! constant factor per `k`.

mod blocks;
mod periods;

pub use blocks::{psi_blocks, RmStructure};
pub use periods::{adapted_block_check, exact_period_matrix, period_matrix, AdaptedBlockReport, PeriodMatrixResult};

use crate::homology::{
    auto_action, build_complex, homology_basis, CellComplex, H1Action, HomologyError, SymplecticBasis,
};
use crate::numfield::{gcd_u64, sin_pi, CycNum, FieldError, RealCyc};
use crate::surface::{build_wiman, wiman_index, EdgeRef, Mat2, SurfaceError, TranslationSurface};
use crate::veech::AffineAuto;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HodgeError {
    #[error("genus must be at least 2, got {0}")]
    BadGenus(usize),
    #[error("index {k} is outside 1..={g}")]
    BadIndex { g: usize, k: usize },
    #[error("t = {t} is not a divisor of {n} in 1..=g")]
    BadDivisor { t: usize, n: usize },
    #[error("only i + j = 2k is computed exactly, got i={i}, j={j}, k={k}")]
    NotDiagonalCase { i: usize, j: usize, k: usize },
    #[error("eigenspace for k={k} has dimension {dim} over K_n, expected 2")]
    BlockDimensionUnexpected { k: usize, dim: usize },
    #[error("blocks {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("period matrix A is singular at this precision")]
    SingularA,
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// The Wiman surfaces `X(g, 1..g)` over one cell complex.
#[derive(Clone, Debug)]
pub struct WimanModel {
    pub g: usize,
    pub n: usize,
    /// `surfaces[k - 1]` is `X(g, k)`.
    pub surfaces: Vec<TranslationSurface>,
    pub complex: CellComplex,
    pub basis: SymplecticBasis,
    /// `dev[k - 1][e]`: holonomy of edge `e` in the `k`-th presentation.
    pub dev: Vec<Vec<CycNum>>,
    /// `periods[k - 1][i]`: period of basis cycle `i` in the `k`-th presentation.
    pub periods: Vec<Vec<CycNum>>,
    /// `T_{m,ε} ↦ T_{m+1,ε}` as an affine map of `X(g, 1)`.
    pub phi: AffineAuto,
}

fn check_k(model: &WimanModel, k: usize) -> Result<(), HodgeError> {
    if k == 0 || k > model.g {
        return Err(HodgeError::BadIndex { g: model.g, k });
    }
    Ok(())
}

pub fn wiman_model(g: usize) -> Result<WimanModel, HodgeError> {
    if g < 2 {
        return Err(HodgeError::BadGenus(g));
    }
    let n = 2 * g + 1;
    let surfaces = (1..=g).map(|k| build_wiman(g, k)).collect::<Result<Vec<_>, _>>()?;
    let complex = build_complex(&surfaces[0]);
    for s in &surfaces[1..] {
        if build_complex(s) != complex {
            return Err(HodgeError::CheckFailed("cell structure depends on k".into()));
        }
    }
    let basis = homology_basis(&complex)?;
    let dev: Vec<Vec<CycNum>> =
        surfaces.iter().map(|s| complex.edges.iter().map(|(e, _)| s.edge_vector(*e)).collect()).collect();
    let np = 2 * n;
    let mut polygon_map = vec![0; np];
    for eps in [1, -1] {
        for m in 0..n {
            polygon_map[wiman_index(n, m, eps)] = wiman_index(n, m + 1, eps);
        }
    }
    let phi = AffineAuto {
        linear: Mat2::rotation(1, n as i64).reduced(),
        polygon_map,
        shifts: vec![0; np],
        offsets: vec![CycNum::zero(2 * n as u64); np],
    };
    if !phi.verify(&surfaces[0]).map_err(|e| HodgeError::CheckFailed(e.to_string()))? {
        return Err(HodgeError::CheckFailed("φ is not an automorphism of X(g, 1)".into()));
    }
    // boundary sums and φ-equivariance, for every k
    for (ki, s) in surfaces.iter().enumerate() {
        let z = CycNum::zeta(n as u64, ki as i64 + 1);
        for p in 0..np {
            let len = s.polygon(p).len();
            let mut sum = CycNum::zero(s.order());
            for i in 0..len {
                let (e, sign) = complex.side(p, i);
                sum += &dev[ki][e].scale_int(sign);
                let img = s.edge_vector(EdgeRef::new(phi.polygon_map[p], i));
                if img != z.try_mul(&s.edge_vector(EdgeRef::new(p, i)))? {
                    return Err(HodgeError::CheckFailed(format!("dev_{} is not φ-equivariant", ki + 1)));
                }
            }
            if !sum.is_zero() {
                return Err(HodgeError::CheckFailed(format!("face {p} does not close up for k = {}", ki + 1)));
            }
        }
    }
    let periods = surfaces.iter().map(|s| crate::homology::periods(s, &complex, &basis.cycles)).collect();
    Ok(WimanModel { g, n, surfaces, complex, basis, dev, periods, phi })
}

impl WimanModel {
    /// `∫_x ω_k` for a coordinate vector `x` in the symplectic basis.
    pub fn period(&self, k: usize, x: &[i64]) -> CycNum {
        let mut acc = CycNum::zero(2 * self.n as u64);
        for (p, &c) in self.periods[k - 1].iter().zip(x) {
            if c != 0 {
                acc += &p.scale_int(c);
            }
        }
        acc
    }

    /// As [`WimanModel::period`] for a vector over `K_n`.
    pub fn period_of(&self, k: usize, x: &[CycNum]) -> Result<CycNum, FieldError> {
        let mut acc = CycNum::zero(2 * self.n as u64);
        for (p, c) in self.periods[k - 1].iter().zip(x) {
            if !c.is_zero() {
                acc = acc.try_add(&p.try_mul(c)?)?;
            }
        }
        Ok(acc)
    }
}

/// The action of `φ` on `H₁`.
pub fn phi_homology(model: &WimanModel) -> Result<H1Action, HodgeError> {
    let m = auto_action(&model.complex, &model.phi, &model.basis)?;
    if m.is_identity() || !m.pow(model.n as u32).is_identity() {
        return Err(HodgeError::CheckFailed("φ* does not have order n".into()));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenformReport {
    pub k: usize,
    pub cycles_checked: usize,
}

/// Exact check of `∫_{φγ} ω_k = ζ_n^k ∫_γ ω_k` and of
/// `∫_{φγ} ω_k + ∫_{φ⁻¹γ} ω_k = (ζ_n^k + ζ_n^{-k}) ∫_γ ω_k` on every basis
/// cycle.
pub fn eigenform_relation_check(model: &WimanModel, k: usize) -> Result<EigenformReport, HodgeError> {
    check_k(model, k)?;
    let m = phi_homology(model)?;
    let minv = m.inverse();
    let n = model.n as u64;
    let z = CycNum::zeta(n, k as i64);
    let c = &z + &CycNum::zeta(n, -(k as i64));
    let dim = model.basis.cycles.len();
    for j in 0..dim {
        let e: Vec<i64> = (0..dim).map(|i| i64::from(i == j)).collect();
        let p = model.period(k, &e);
        let fwd = model.period(k, &m.apply(&e));
        let back = model.period(k, &minv.apply(&e));
        if fwd != z.try_mul(&p)? {
            return Err(HodgeError::CheckFailed(format!("∫_(φγ_{j}) ω_{k} ≠ ζ^{k} ∫_(γ_{j}) ω_{k}")));
        }
        if fwd.try_add(&back)? != c.try_mul(&p)? {
            return Err(HodgeError::CheckFailed(format!("Ψ relation fails on γ_{j} for k = {k}")));
        }
    }
    Ok(EigenformReport { k, cycles_checked: dim })
}

/// The derivative of the off-block period matrix entry `Π_ij` along the
/// Teichmüller disk of `ω_k`, for `i + j = 2k`. Up to the fixed factor
/// `i/2` this is `∫ ω_i ω_j ω̄_k/ω_k = ∫ |ω_k|²`, the flat area of `X(g, k)`.
pub fn ahlfors_offblock_derivative(model: &WimanModel, k: usize, i: usize, j: usize) -> Result<RealCyc, HodgeError> {
    check_k(model, k)?;
    check_k(model, i)?;
    check_k(model, j)?;
    if i + j != 2 * k {
        return Err(HodgeError::NotDiagonalCase { i, j, k });
    }
    let area = model.surfaces[k - 1].area();
    if area != wiman_area(model.g, k) || !area.is_positive() {
        return Err(HodgeError::CheckFailed("flat area disagrees with n·sin(2kπ/n)".into()));
    }
    Ok(area)
}

/// `n·sin(2kπ/n)`, the area of `X(g, k)`.
pub fn wiman_area(g: usize, k: usize) -> RealCyc {
    let n = 2 * g + 1;
    sin_pi(2 * k as i64, n as i64).scale(&BigRational::from_integer(n.into())).reduced()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RmWitness {
    pub ell: usize,
    pub indices: (usize, usize),
    pub area: RealCyc,
    pub area_f64: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RmVerdict {
    /// Some off-block period has nonzero derivative along the disk.
    Violated { t: usize, witness: RmWitness },
    /// No admissible `ℓ`; `k` is the smallest or largest index of its class.
    PreservedConsistent { t: usize, class: Vec<usize> },
}

impl RmVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, RmVerdict::Violated { .. })
    }
}

/// Indices `1 ≤ k ≤ g` with `gcd(k, n) = t`.
pub fn gcd_class(g: usize, t: usize) -> Vec<usize> {
    let n = 2 * g + 1;
    (1..=g).filter(|&k| gcd_u64(k as u64, n as u64) as usize == t).collect()
}

/// Whether the real multiplication on the `t`-summand survives along the
/// Teichmüller disk of `(W_g, ω_k)`.
pub fn rm_verdict(g: usize, k: usize) -> Result<RmVerdict, HodgeError> {
    if g < 2 {
        return Err(HodgeError::BadGenus(g));
    }
    if k == 0 || k > g {
        return Err(HodgeError::BadIndex { g, k });
    }
    let n = 2 * g + 1;
    let t = gcd_u64(k as u64, n as u64) as usize;
    let in_class = |i: usize| gcd_u64(i as u64, n as u64) as usize == t;
    let mut ell = 1;
    while ell * t < k && k + ell * t <= g {
        let (i, j) = (k - ell * t, k + ell * t);
        if in_class(i) || in_class(j) {
            let area = build_wiman(g, k)?.area();
            if area != wiman_area(g, k) || !area.is_positive() {
                return Err(HodgeError::CheckFailed("flat area disagrees with n·sin(2kπ/n)".into()));
            }
            let area_f64 = area.to_f64();
            return Ok(RmVerdict::Violated { t, witness: RmWitness { ell, indices: (i, j), area, area_f64 } });
        }
        ell += 1;
    }
    Ok(RmVerdict::PreservedConsistent { t, class: gcd_class(g, t) })
}
