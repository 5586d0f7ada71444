use super::H1Action;
use crate::numfield::{char_poly, IntPoly};
use num_bigint::BigInt;
use serde::Serialize;

/// The eigenvalue of largest modulus and what could be certified about it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeadingEigenvalue {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    /// Inclusion radius of the root disc.
    pub radius: f64,
    /// Root of multiplicity one in the characteristic polynomial.
    pub simple: bool,
    /// `|λ| > |λ'|` for every other root, with disjoint enclosures.
    pub strictly_dominant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub char_poly: IntPoly,
    pub palindromic: bool,
    pub quasi_unipotent: bool,
    pub finite_order: Option<u64>,
    pub leading: Option<LeadingEigenvalue>,
}

fn squarefree(p: &IntPoly) -> IntPoly {
    let g = p.gcd(&p.derivative());
    if g.degree() == 0 {
        return p.clone();
    }
    p.exact_div(&g).unwrap_or_else(|| p.clone())
}

fn leading(p: &IntPoly) -> Option<LeadingEigenvalue> {
    let sf = squarefree(p);
    let discs = sf.root_discs();
    let k = (0..discs.len()).max_by(|&a, &b| discs[a].0.norm().total_cmp(&discs[b].0.norm()))?;
    let (z, r) = discs[k];
    let disjoint =
        |a: &(num_complex::Complex64, f64), b: &(num_complex::Complex64, f64)| (a.0 - b.0).norm() > a.1 + b.1;
    let separated = discs.iter().enumerate().all(|(j, d)| j == k || disjoint(d, &discs[k]));
    // a repeated root of p is a root of gcd(p, p'), whose roots lie among those of sf
    let rep = p.gcd(&p.derivative());
    let simple =
        separated && (rep.degree() == 0 || squarefree(&rep).root_discs().iter().all(|d| disjoint(d, &discs[k])));
    let strictly_dominant =
        separated && discs.iter().enumerate().all(|(j, d)| j == k || d.0.norm() + d.1 < z.norm() - r);
    Some(LeadingEigenvalue { re: z.re, im: z.im, modulus: z.norm(), radius: r, simple, strictly_dominant })
}

fn finite_order(m: &H1Action, orders: &[u64]) -> Option<u64> {
    let e = orders.iter().fold(1u64, |a, &b| crate::numfield::lcm_u64(a, b));
    (e <= 1 << 12 && m.pow(e as u32).is_identity()).then_some(e)
}

pub fn spectral_report(m: &H1Action) -> SpectralReport {
    let big: Vec<Vec<BigInt>> = m.m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cp = char_poly(&big);
    let (rest, orders) = cp.strip_cyclotomic();
    let quasi_unipotent = rest.degree() == 0;
    SpectralReport {
        palindromic: cp.is_palindromic(),
        quasi_unipotent,
        finite_order: if quasi_unipotent { finite_order(m, &orders) } else { None },
        leading: leading(&cp),
        char_poly: cp,
    }
}
