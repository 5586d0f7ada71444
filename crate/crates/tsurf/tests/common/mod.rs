//! Property suites shared by the `properties` and `acceptance` targets.
//! Each runs a seeded proptest runner for [`CASES`] cases.

#![allow(dead_code, clippy::eq_op)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use tsurf::flow::{decompose_along, saddle_connections, trace_ray, DecompositionOutcome, TraceOutcome, TraceStart};
use tsurf::homology::{build_complex, combine, coordinates, homology_basis, intersection};
use tsurf::numfield::{euler_phi, CycNum, RealCyc};
use tsurf::surface::{
    act, build_2ngon, build_double_ngon, build_origami, build_wiman, cross_sign, dot_sign, Mat2, TranslationSurface,
};
use tsurf::veech::iota0;

pub const CASES: u32 = 256;

pub fn runner(seed: u8) -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn cyc_in(order: u64) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(small_rat(), euler_phi(order) as usize)
        .prop_map(move |c| CycNum::from_coeffs(order, &c).unwrap())
}

fn any_cyc() -> impl Strategy<Value = CycNum> {
    prop_oneof![Just(1u64), Just(3), Just(4), Just(5), Just(8), Just(12)].prop_flat_map(cyc_in)
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

/// `(h, v)` for a square-tiled surface with up to six squares.
fn origami_perms() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1usize..=6).prop_flat_map(|n| (perm(n), perm(n)))
}

/// An element of SL(2, Z) as a word in the two elementary shears.
fn sl2z() -> impl Strategy<Value = Mat2> {
    prop::collection::vec(0u8..4, 0..4).prop_map(|w| {
        w.iter().fold(Mat2::identity(), |m, g| {
            let s = match g {
                0 => Mat2::from_ints(1, 1, 0, 1),
                1 => Mat2::from_ints(1, -1, 0, 1),
                2 => Mat2::from_ints(1, 0, 1, 1),
                _ => Mat2::from_ints(1, 0, -1, 1),
            };
            m.mul(&s)
        })
    })
}

/// A connected square-tiled surface, sheared by an element of SL(2, Z).
fn sheared_origami() -> impl Strategy<Value = TranslationSurface> {
    (origami_perms(), sl2z())
        .prop_filter_map("connected", |((h, v), a)| build_origami(&h, &v).ok().map(|s| act(&s, &a).unwrap()))
}

fn primitive_dir() -> impl Strategy<Value = (i64, i64)> {
    (-4i64..=4, -4i64..=4).prop_filter("nonzero", |&(x, y)| x != 0 || y != 0)
}

fn vec_xy(x: i64, y: i64) -> CycNum {
    &CycNum::from_int(x) + &(&CycNum::i() * &CycNum::from_int(y))
}

fn check(b: bool, msg: &str) -> Result<(), TestCaseError> {
    if b {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.to_string()))
    }
}

fn close(a: num_complex::Complex64, b: num_complex::Complex64) -> bool {
    (a - b).norm() <= 1e-8 * (1.0 + a.norm().max(b.norm()))
}

pub fn field_axioms(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(any_cyc(), any_cyc(), any_cyc(), prop_oneof![Just(7i64), Just(11), Just(13), Just(-1)]), |(a, b, c, k)| {
        check(&(&a + &b) + &c == &a + &(&b + &c), "addition associates")?;
        check(&a * &b == &b * &a, "multiplication commutes")?;
        check(&(&a * &b) * &c == &a * &(&b * &c), "multiplication associates")?;
        check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributive law")?;
        check((&a - &a).is_zero(), "a - a = 0")?;
        if !a.is_zero() {
            check((&a * &a.inv().unwrap()) == CycNum::one(1), "a · a⁻¹ = 1")?;
        }
        check((&a * &b).conj() == &a.conj() * &b.conj(), "conjugation is multiplicative")?;
        // k is a unit for every order in play
        check((&a * &b).galois(k) == &a.galois(k) * &b.galois(k), "Galois action is multiplicative")?;
        check((&a + &b).galois(k) == &a.galois(k) + &b.galois(k), "Galois action is additive")?;
        // numeric oracle
        check(close((&a * &b).approx(), a.approx() * b.approx()), "embedding respects products")?;
        check(close((&a + &b).approx(), a.approx() + b.approx()), "embedding respects sums")?;
        let n = a.norm_sq();
        check(n.value() == &(&a * &a.conj()), "|a|² = a ā")?;
        check(!n.value().is_zero() || a.is_zero(), "|a|² = 0 only for 0")?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn json_round_trip(r: &mut TestRunner) -> Result<(), String> {
    let fixed = prop_oneof![
        (2usize..=4).prop_map(|g| build_2ngon(2 * g + 1).unwrap()),
        (2usize..=3).prop_map(|g| build_double_ngon(2 * g + 1).unwrap()),
        (2usize..=3, 1usize..=3).prop_map(|(g, k)| build_wiman(g, k.min(g)).unwrap()),
    ];
    let surfaces = prop_oneof![sheared_origami(), fixed];
    r.run(&(surfaces, any_cyc()), |(s, z)| {
        let text = serde_json::to_string(&z).unwrap();
        check(serde_json::from_str::<CycNum>(&text).unwrap() == z, "number survives JSON")?;
        let json = s.to_json();
        let back = TranslationSurface::from_json(&json).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(back.to_json() == json, "surface JSON is a fixed point")?;
        check(back.to_data() == s.to_data(), "surface data survives JSON")?;
        check(back.invariants() == s.invariants(), "invariants survive JSON")?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn cylinder_area_additivity(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(sheared_origami(), primitive_dir()), |(s, (x, y))| {
        let v = vec_xy(x, y);
        let out = decompose_along(&s, &v, 10_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let DecompositionOutcome::Cylinders(dec) = out else {
            return Err(TestCaseError::fail("rational direction on a square-tiled surface must decompose"));
        };
        check(dec.total_area() == s.area(), "cylinder areas add up to the surface area")?;
        for c in &dec.cylinders {
            check(c.area.is_positive() && c.modulus.is_positive(), "positive area and modulus")?;
            // area² = circumference² · width², modulus² · width² = circumference²
            check(&c.area * &c.area == &c.circumference_sq * &c.width_sq, "area = circumference · width")?;
            check(&(&c.modulus * &c.modulus) * &c.width_sq == c.circumference_sq, "modulus = circumference / width")?;
            check(cross_sign(&c.holonomy, &v) == std::cmp::Ordering::Equal, "core is parallel to the flow")?;
            check(c.modulus.is_rational(), "moduli are rational on square-tiled surfaces")?;
        }
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn trace_retracing(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(sheared_origami(), 1i64..=2), |(s, bound)| {
        let list = saddle_connections(&s, &RealCyc::from_int(bound)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(!list.is_empty(), "edges are saddle connections")?;
        for sc in &list {
            check(sc.retrace(&s) == sc.holonomy, "crossings reproduce the holonomy")?;
            let len = sc.holonomy.norm_sq();
            check(len <= RealCyc::from_int(bound * bound), "within the bound")?;
            let (p, i) = sc.start_corner;
            // leaving strictly inside the corner: a fresh trace ends at the same place
            let poly = s.polygon(p);
            let out = poly.edge_vector(i);
            let back = -&poly.edge_vector((i + poly.len() - 1) % poly.len());
            let inside = cross_sign(&out, &sc.holonomy) == std::cmp::Ordering::Greater
                && cross_sign(&sc.holonomy, &back) == std::cmp::Ordering::Greater;
            if inside {
                let t = trace_ray(&s, &TraceStart::Corner { polygon: p, vertex: i }, &sc.holonomy, 10_000)
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                match t {
                    TraceOutcome::HitsCone { holonomy, corner, .. } => {
                        check(holonomy == sc.holonomy, "re-traced holonomy")?;
                        check(s.vertex_class(corner.0, corner.1) == sc.end, "re-traced endpoint")?;
                    }
                    _ => return Err(TestCaseError::fail("saddle connection direction must hit a vertex")),
                }
            }
            check(dot_sign(&sc.holonomy, &sc.holonomy) == std::cmp::Ordering::Greater, "nonzero holonomy")?;
        }
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn intersection_form(r: &mut TestRunner) -> Result<(), String> {
    let coeffs = prop::collection::vec(-3i64..=3, 12);
    r.run(&(sheared_origami(), coeffs.clone(), coeffs.clone(), coeffs), |(s, x, y, z)| {
        let c = build_complex(&s);
        let b = homology_basis(&c).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let n = 2 * b.genus();
        let (x, y, z) = (&x[..n], &y[..n], &z[..n]);
        let (cx, cy, cz) = (combine(&b, x), combine(&b, y), combine(&b, z));
        let g = n / 2;
        // xᵀJy with J = (0 I; -I 0)
        let form = |u: &[i64], w: &[i64]| -> i64 { (0..g).map(|i| u[i] * w[g + i] - u[g + i] * w[i]).sum() };
        check(intersection(&c, &cx, &cy) == form(x, y), "pairing is xᵀJy in the basis")?;
        check(intersection(&c, &cx, &cy) == -intersection(&c, &cy, &cx), "antisymmetric")?;
        let xy: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let lhs = intersection(&c, &combine(&b, &xy), &cz);
        check(lhs == intersection(&c, &cx, &cz) + intersection(&c, &cy, &cz), "bilinear")?;
        check(coordinates(&c, &b, &cx) == x, "coordinates invert combine")?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn iota_anti_homomorphism(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(sl2z(), sl2z()), |(a, b)| check(iota0(&a.mul(&b)) == iota0(&b).mul(&iota0(&a)), "ι₀(AB) = ι₀(B)ι₀(A)"))
        .map_err(|e| e.to_string())
}

/// A random matrix of determinant one with small rational entries.
pub fn random_sl2(rng: &mut impl rand::Rng) -> Mat2 {
    loop {
        let a = rng.gen_range(-5i64..=5);
        let b = rng.gen_range(-5i64..=5);
        let c = rng.gen_range(-5i64..=5);
        if a == 0 {
            continue;
        }
        let r = |p: i64, q: i64| RealCyc::from_rational(&BigRational::new(BigInt::from(p), BigInt::from(q)));
        return Mat2::new(r(a, 1), r(b, 1), r(c, 1), r(1 + b * c, a));
    }
}
