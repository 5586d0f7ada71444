use super::{gcd_class, phi_homology, HodgeError, WimanModel};
use crate::homology::H1Action;
use crate::numfield::{cos2pi, euler_phi, linalg, CycNum, FieldError};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// The eigenspaces `T^k` of `Ψ = φ* + φ*⁻¹` in `H₁ ⊗ K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RmStructure {
    pub n: usize,
    /// `blocks[k - 1]`: a `K_n`-basis of `ker(Ψ - 2cos(2πk/n))`.
    pub blocks: Vec<Vec<Vec<CycNum>>>,
    /// `(t, {k : gcd(k, n) = t})` for the divisors `t ≤ g` of `n`.
    pub grouping: Vec<(usize, Vec<usize>)>,
    /// `Ψ` on `H₁` in the symplectic basis.
    pub psi: Vec<Vec<i64>>,
}

// Q-basis 1, θ, …, θ^{d-1} of K_n with θ = 2cos(2π/n)
struct RealSubfield {
    powers: Vec<CycNum>,
    coords: linalg::QMat,
}

impl RealSubfield {
    fn new(n: u64) -> Result<Self, FieldError> {
        let d = (euler_phi(n) / 2).max(1) as usize;
        let theta = cos2pi(1, n as i64)?.value().scale_int(2).lift(n)?;
        let mut powers = vec![CycNum::one(n)];
        for _ in 1..d {
            let next = powers.last().unwrap().try_mul(&theta)?;
            powers.push(next);
        }
        let rows = powers[0].numerators().len();
        let cols: Vec<Vec<BigRational>> = powers.iter().map(|p| p.coeffs()).collect();
        let coords = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        Ok(RealSubfield { powers, coords })
    }

    fn dim(&self) -> usize {
        self.powers.len()
    }

    fn coordinates(&self, x: &CycNum) -> Result<Vec<BigRational>, FieldError> {
        let x = x.lift(self.powers[0].order())?;
        linalg::solve(&self.coords, &x.coeffs()).ok_or(FieldError::NotReal)
    }

    // multiplication by x as a d×d rational matrix
    fn mult_matrix(&self, x: &CycNum) -> Result<linalg::QMat, FieldError> {
        let d = self.dim();
        let cols = self.powers.iter().map(|p| self.coordinates(&x.try_mul(p)?)).collect::<Result<Vec<_>, _>>()?;
        Ok((0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect())
    }
}

/// Dimension over `K_n` of `ker(Ψ - c)`, from the rational blow-up.
fn blown_up_kernel_dim(psi: &[Vec<i64>], c: &CycNum, f: &RealSubfield) -> Result<usize, FieldError> {
    let m = psi.len();
    let d = f.dim();
    let cm = f.mult_matrix(c)?;
    let mut big = vec![vec![BigRational::zero(); m * d]; m * d];
    for i in 0..m {
        for j in 0..m {
            for a in 0..d {
                if psi[i][j] != 0 {
                    big[i * d + a][j * d + a] += BigRational::from_integer(psi[i][j].into());
                }
                if i == j {
                    for b in 0..d {
                        big[i * d + a][j * d + b] -= &cm[a][b];
                    }
                }
            }
        }
    }
    Ok((m * d - linalg::rank(&big)) / d)
}

/// Exact kernel of a matrix over a cyclotomic field.
pub(crate) fn kernel_over_field(mat: &[Vec<CycNum>]) -> Result<Vec<Vec<CycNum>>, FieldError> {
    let rows = mat.len();
    if rows == 0 {
        return Ok(Vec::new());
    }
    let cols = mat[0].len();
    let order = mat[0][0].order();
    let mut a: Vec<Vec<CycNum>> = mat.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv()?;
        for x in a[r].iter_mut() {
            *x = x.try_mul(&inv)?;
        }
        let pivot_row = a[r].clone();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.try_sub(&f.try_mul(y)?)?;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![CycNum::zero(order); cols];
        v[free] = CycNum::one(order);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        out.push(v);
    }
    Ok(out)
}

/// `xᵀ J y` for the standard symplectic `J`.
pub(crate) fn symplectic_pairing(x: &[CycNum], y: &[CycNum]) -> Result<CycNum, FieldError> {
    let g = x.len() / 2;
    let mut acc = CycNum::zero(x[0].order());
    for i in 0..g {
        acc = acc.try_add(&x[i].try_mul(&y[g + i])?)?;
        acc = acc.try_sub(&x[g + i].try_mul(&y[i])?)?;
    }
    Ok(acc)
}

fn psi_matrix(m: &H1Action) -> Vec<Vec<i64>> {
    let inv = m.inverse();
    m.m.iter().zip(&inv.m).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect()
}

pub fn psi_blocks(model: &WimanModel) -> Result<RmStructure, HodgeError> {
    let n = model.n as u64;
    let m = phi_homology(model)?;
    let psi = psi_matrix(&m);
    let field = RealSubfield::new(n)?;
    let dim = psi.len();
    let mut blocks = Vec::with_capacity(model.g);
    for k in 1..=model.g {
        let c = CycNum::zeta(n, k as i64).try_add(&CycNum::zeta(n, -(k as i64)))?;
        let kd = blown_up_kernel_dim(&psi, &c, &field)?;
        let mat: Vec<Vec<CycNum>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let v = CycNum::from_int_in(psi[i][j], n);
                        if i == j {
                            v.try_sub(&c)
                        } else {
                            Ok(v)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let ker = kernel_over_field(&mat)?;
        if kd != 2 || ker.len() != 2 {
            return Err(HodgeError::BlockDimensionUnexpected { k, dim: ker.len() });
        }
        blocks.push(ker);
    }
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            for x in &blocks[a] {
                for y in &blocks[b] {
                    if !symplectic_pairing(x, y)?.is_zero() {
                        return Err(HodgeError::NotOrthogonal(a + 1, b + 1));
                    }
                }
            }
        }
    }
    let grouping = (1..=model.g)
        .filter(|&t| n % t as u64 == 0)
        .map(|t| (t, gcd_class(model.g, t)))
        .filter(|(_, ks)| !ks.is_empty())
        .collect();
    Ok(RmStructure { n: model.n, blocks, grouping, psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::wiman_model;

    #[test]
    fn blocks_small_genus() {
        for g in [2, 3] {
            let m = wiman_model(g).unwrap();
            let rm = psi_blocks(&m).unwrap();
            assert_eq!(rm.blocks.len(), g);
            assert!(rm.blocks.iter().all(|b| b.len() == 2));
        }
    }

    #[test]
    fn grouping_for_nine() {
        let m = wiman_model(4).unwrap();
        let rm = psi_blocks(&m).unwrap();
        assert_eq!(rm.grouping, vec![(1, vec![1, 2, 4]), (3, vec![3])]);
    }

    #[test]
    fn field_kernel() {
        let one = CycNum::one(5);
        let z = CycNum::zeta(5, 1);
        let mat = vec![vec![one.clone(), z.clone()], vec![z.clone(), &z * &z]];
        let k = kernel_over_field(&mat).unwrap();
        assert_eq!(k.len(), 1);
        assert!((&one * &k[0][0] + &z * &k[0][1]).is_zero());
    }
}
