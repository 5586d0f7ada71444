use super::blocks::symplectic_pairing;
use super::{psi_blocks, HodgeError, WimanModel};
use crate::homology::SymplecticBasis;
use crate::numfield::{embed_mp, gcd_u64, CycNum, MpBall, MpComplex};
use serde::Serialize;
use std::cmp::Ordering;

/// `Π = A⁻¹B` with `A_jk = ∫_{a_k} ω_j` and `B_jk = ∫_{b_k} ω_j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodMatrixResult {
    pub bits: u32,
    /// Midpoints as `[re, im]`.
    pub pi: Vec<Vec<[f64; 2]>>,
    /// Largest enclosure radius over all entries.
    pub err: f64,
    /// Largest `|Π_ij - Π_ji|` between midpoints.
    pub asymmetry: f64,
    /// Every `Π_ij` and `Π_ji` enclosure overlap.
    pub symmetric: bool,
    /// `Im Π` is positive definite, certified by a ball `LDLᵀ`.
    pub im_positive: bool,
    pub basis: SymplecticBasis,
}

fn period_blocks(model: &WimanModel) -> (Vec<Vec<CycNum>>, Vec<Vec<CycNum>>) {
    let g = model.g;
    let a = (0..g).map(|j| (0..g).map(|k| model.periods[j][k].clone()).collect()).collect();
    let b = (0..g).map(|j| (0..g).map(|k| model.periods[j][g + k].clone()).collect()).collect();
    (a, b)
}

fn ball_norm(z: &MpComplex) -> f64 {
    z.to_c64().norm()
}

// Gauss–Jordan on [A | B] in ball arithmetic with partial pivoting.
fn ball_solve(mut a: Vec<Vec<MpComplex>>, mut b: Vec<Vec<MpComplex>>) -> Option<Vec<Vec<MpComplex>>> {
    let n = a.len();
    for c in 0..n {
        let p =
            (c..n).max_by(|&i, &j| ball_norm(&a[i][c]).partial_cmp(&ball_norm(&a[j][c])).unwrap_or(Ordering::Equal))?;
        a.swap(c, p);
        b.swap(c, p);
        let piv = a[c][c].clone();
        if piv.contains_zero() {
            return None;
        }
        for x in a[c].iter_mut().chain(b[c].iter_mut()) {
            *x = x.div(&piv)?;
        }
        let (ra, rb) = (a[c].clone(), b[c].clone());
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = a[i][c].clone();
            for (x, y) in a[i].iter_mut().zip(&ra) {
                *x = &*x - &(&f * y);
            }
            for (x, y) in b[i].iter_mut().zip(&rb) {
                *x = &*x - &(&f * y);
            }
        }
    }
    Some(b)
}

// LDLᵀ of a symmetric ball matrix given by its upper triangle
fn certified_positive_definite(s: &[Vec<MpBall>]) -> bool {
    let n = s.len();
    let prec = s[0][0].prec;
    let sym = |i: usize, j: usize| if i <= j { s[i][j].clone() } else { s[j][i].clone() };
    let mut l = vec![vec![MpBall::zero(prec); n]; n];
    let mut d: Vec<MpBall> = Vec::with_capacity(n);
    for j in 0..n {
        let mut dj = sym(j, j);
        for k in 0..j {
            dj = &dj - &(&l[j][k].sqr() * &d[k]);
        }
        if !dj.is_positive() {
            return false;
        }
        for i in j + 1..n {
            let mut v = sym(i, j);
            for k in 0..j {
                v = &v - &(&(&l[i][k] * &l[j][k]) * &d[k]);
            }
            match v.div(&dj) {
                Some(x) => l[i][j] = x,
                None => return false,
            }
        }
        d.push(dj);
    }
    true
}

/// The normalized period matrix, evaluated in ball arithmetic. The unknown
/// scale of each `ω_k` against the flat structure cancels in `A⁻¹B`.
pub fn period_matrix(model: &WimanModel, bits: u32) -> Result<PeriodMatrixResult, HodgeError> {
    let (a, b) = period_blocks(model);
    // guard bits against the growth of radii during elimination
    let prec = bits + 32;
    let emb = |m: &Vec<Vec<CycNum>>| -> Result<Vec<Vec<MpComplex>>, HodgeError> {
        m.iter().map(|r| r.iter().map(|x| Ok(embed_mp(x, 1, prec)?)).collect()).collect()
    };
    let pi = ball_solve(emb(&a)?, emb(&b)?).ok_or(HodgeError::SingularA)?;
    let g = model.g;
    let mut err = 0f64;
    let mut asymmetry = 0f64;
    let mut symmetric = true;
    for i in 0..g {
        for j in 0..g {
            err = err.max(pi[i][j].radius_f64());
            let diff = &pi[i][j] - &pi[j][i];
            asymmetry = asymmetry.max(diff.to_c64().norm());
            symmetric &= diff.contains_zero();
        }
    }
    let im: Vec<Vec<MpBall>> = pi.iter().map(|r| r.iter().map(|z| z.im.clone()).collect()).collect();
    let im_positive = certified_positive_definite(&im);
    let mids = pi.iter().map(|r| r.iter().map(|z| [z.re.mid_f64(), z.im.mid_f64()]).collect()).collect();
    Ok(PeriodMatrixResult { bits, pi: mids, err, asymmetry, symmetric, im_positive, basis: model.basis.clone() })
}

/// `A⁻¹B` computed exactly in `Q(ζ_{2n})`.
pub fn exact_period_matrix(model: &WimanModel) -> Result<Vec<Vec<CycNum>>, HodgeError> {
    let (mut a, mut b) = period_blocks(model);
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(HodgeError::SingularA)?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = a[c][c].inv()?;
        for x in a[c].iter_mut().chain(b[c].iter_mut()) {
            *x = x.try_mul(&inv)?;
        }
        let (ra, rb) = (a[c].clone(), b[c].clone());
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for (x, y) in a[i].iter_mut().zip(&ra) {
                *x = x.try_sub(&f.try_mul(y)?)?;
            }
            for (x, y) in b[i].iter_mut().zip(&rb) {
                *x = x.try_sub(&f.try_mul(y)?)?;
            }
        }
    }
    Ok(b.into_iter().map(|r| r.into_iter().map(|x| x.reduced()).collect()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdaptedBlockReport {
    pub t: usize,
    pub class: Vec<usize>,
    pub complement: Vec<usize>,
    /// Period matrix in the adapted basis, exact.
    pub pi_exact: Vec<Vec<CycNum>>,
    /// Diagonal as `[re, im]`.
    pub diagonal: Vec<[f64; 2]>,
    pub block_diagonal: bool,
    pub fully_diagonal: bool,
    pub diagonal_in_upper_half_plane: bool,
}

/// Period matrix in a symplectic basis adapted to the `Ψ`-eigenblocks.
///
/// Inside block `k` the basis is `u, w/⟨u, w⟩` for the exact kernel basis
/// `u, w`; such cycles are real once `K_n` is embedded by `ζ_n ↦ e^{2πi/n}`.
/// `ω_j` vanishes on every block but the `j`-th, so the matrix comes out
/// diagonal; the check is exact.
pub fn adapted_block_check(model: &WimanModel, t: usize) -> Result<AdaptedBlockReport, HodgeError> {
    let n = model.n;
    if t == 0 || t > model.g || n % t != 0 {
        return Err(HodgeError::BadDivisor { t, n });
    }
    let rm = psi_blocks(model)?;
    let g = model.g;
    let mut a = vec![vec![CycNum::zero(2 * n as u64); g]; g];
    let mut b = a.clone();
    for k in 0..g {
        let (u, w) = (&rm.blocks[k][0], &rm.blocks[k][1]);
        let s = symplectic_pairing(u, w)?;
        if s.is_zero() {
            return Err(HodgeError::CheckFailed(format!("block {} is isotropic", k + 1)));
        }
        let sinv = s.inv()?;
        let bw: Vec<CycNum> = w.iter().map(|x| x.try_mul(&sinv)).collect::<Result<_, _>>()?;
        for j in 0..g {
            a[j][k] = model.period_of(j + 1, u)?.reduced();
            b[j][k] = model.period_of(j + 1, &bw)?.reduced();
        }
    }
    let class: Vec<usize> = (1..=g).filter(|&k| gcd_u64(k as u64, n as u64) as usize == t).collect();
    let complement: Vec<usize> = (1..=g).filter(|k| !class.contains(k)).collect();
    let fully_diagonal = (0..g).all(|i| (0..g).all(|j| i == j || (a[i][j].is_zero() && b[i][j].is_zero())));
    let block_diagonal = class.iter().all(|&i| {
        complement.iter().all(|&j| {
            a[i - 1][j - 1].is_zero()
                && b[i - 1][j - 1].is_zero()
                && a[j - 1][i - 1].is_zero()
                && b[j - 1][i - 1].is_zero()
        })
    });
    let mut pi_exact = vec![vec![CycNum::zero(2 * n as u64); g]; g];
    let mut diagonal = Vec::with_capacity(g);
    let mut upper = true;
    for k in 0..g {
        if a[k][k].is_zero() {
            return Err(HodgeError::SingularA);
        }
        let d = b[k][k].try_div(&a[k][k])?.reduced();
        upper &= d.im_sign() == Ordering::Greater;
        let z = d.approx();
        diagonal.push([z.re, z.im]);
        pi_exact[k][k] = d;
    }
    if !fully_diagonal {
        // only reached if ω_j fails to vanish off its block; report entries
        for i in 0..g {
            for j in 0..g {
                if i != j && !a[i][i].is_zero() {
                    pi_exact[i][j] = b[i][j].try_div(&a[i][i])?.reduced();
                }
            }
        }
    }
    let report = AdaptedBlockReport {
        t,
        class,
        complement,
        pi_exact,
        diagonal,
        block_diagonal,
        fully_diagonal,
        diagonal_in_upper_half_plane: upper,
    };
    if !report.block_diagonal || !report.diagonal_in_upper_half_plane {
        return Err(HodgeError::CheckFailed(format!(
            "adapted period matrix: block diagonal {}, diagonal in H {}",
            report.block_diagonal, report.diagonal_in_upper_half_plane
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::wiman_model;

    #[test]
    fn genus_two_period_matrix() {
        let m = wiman_model(2).unwrap();
        let r = period_matrix(&m, 128).unwrap();
        assert!(r.symmetric, "asymmetry {}", r.asymmetry);
        assert!(r.im_positive);
        assert!(r.err < 1e-12);
        let exact = exact_period_matrix(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let z = exact[i][j].approx();
                assert!((z.re - r.pi[i][j][0]).abs() < 1e-12 && (z.im - r.pi[i][j][1]).abs() < 1e-12);
                assert_eq!(exact[i][j], exact[j][i]);
            }
        }
    }

    #[test]
    fn precision_halves_error() {
        let m = wiman_model(3).unwrap();
        let lo = period_matrix(&m, 128).unwrap();
        let hi = period_matrix(&m, 256).unwrap();
        assert!(lo.im_positive && hi.im_positive);
        assert!(hi.err <= lo.err / 2.0);
    }

    #[test]
    fn adapted_bases_diagonalize() {
        for g in [2, 3] {
            let m = wiman_model(g).unwrap();
            let r = adapted_block_check(&m, 1).unwrap();
            assert!(r.fully_diagonal);
            assert!(r.diagonal.iter().all(|z| z[1] > 0.0));
        }
    }
}
