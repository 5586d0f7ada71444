//! Numeric maps between the guises of the Teichmüller disk.

use crate::surface::Mat2;
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

fn columns(a: &Mat2) -> (Complex64, Complex64) {
    let m = a.to_f64();
    (Complex64::new(m[0][0], m[1][0]), Complex64::new(m[0][1], m[1][1]))
}

/// `A(i)/A(1)`, a point of the upper half plane.
pub fn lambda0(a: &Mat2) -> Complex64 {
    let (a1, ai) = columns(a);
    ai / a1
}

/// The Beltrami coefficient `(A(1) + iA(i))/(A(1) - iA(i))`, in the unit disk.
pub fn mu0(a: &Mat2) -> Complex64 {
    let (a1, ai) = columns(a);
    let i = Complex64::i();
    (a1 + i * ai) / (a1 - i * ai)
}

/// `τ ↦ (i - τ)/(i + τ)` from the upper half plane to the disk.
pub fn cayley(tau: Complex64) -> Complex64 {
    let i = Complex64::i();
    (i - tau) / (i + tau)
}

/// `(a b; c d) ↦ (d b; c a)`, an anti-homomorphism.
pub fn iota0(a: &Mat2) -> Mat2 {
    Mat2::new(a.d.clone(), a.b.clone(), a.c.clone(), a.a.clone())
}

/// `(cot θ, cot θ/2)` for `0 < θ < π/2`.
pub fn cot_geodesic(theta: f64) -> Option<(f64, f64)> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return None;
    }
    Some((1.0 / theta.tan(), 1.0 / (theta / 2.0).tan()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn identity_values() {
        let id = Mat2::identity();
        assert!((lambda0(&id) - Complex64::i()).norm() < 1e-15);
        assert!(mu0(&id).norm() < 1e-15);
    }

    #[test]
    fn iota_swaps_diagonal() {
        let a = Mat2::from_ints(1, 2, 3, 7);
        assert_eq!(iota0(&a), Mat2::from_ints(7, 2, 3, 1));
        let b = Mat2::from_ints(2, 1, 1, 1);
        assert_eq!(iota0(&a.mul(&b)), iota0(&b).mul(&iota0(&a)));
    }

    #[test]
    fn geodesic_values() {
        let (a, b) = cot_geodesic(PI / 4.0).unwrap();
        assert!((a - 1.0).abs() < 1e-12);
        assert!((b - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        let (a, _) = cot_geodesic(PI / 2.0 - 1e-9).unwrap();
        assert!(a.abs() < 1e-8);
        let (_, b) = cot_geodesic(PI / 10.0).unwrap();
        assert!((b - 6.313_751_514_675_04).abs() < 1e-9);
        assert!(cot_geodesic(2.0).is_none());
    }
}
