use std::sync::Arc;

use amoduli::ainfinity::{gauge_act, group_mul, AnStructure, GaugeTransform};
use amoduli::curves::{special_curve_algebra, SpecialCurveData};
use amoduli::hochschild::{apply_differential, gerstenhaber, CochainBasis};
use amoduli::linalg::{ExactMatrix, Rat};
use amoduli::poly::{normal_form, LaurentVector, MultiPoly, RelationSystem};
use amoduli::quiver::{build_ew, EWAlgebra, SubspaceW};
use amoduli::random::{random_cochain, random_gauge, rng};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| Rat::new(p, q))
}

fn cusp() -> Arc<EWAlgebra> {
    Arc::new(build_ew(&SubspaceW::zero(1)))
}

fn two_branch() -> RelationSystem {
    let d = SpecialCurveData::new(2, vec![1], vec![vec![Rat::from_int(2)]]).unwrap();
    special_curve_algebra(&d).unwrap().system
}

/// A random polynomial in f1, h1, hS2 from small exponent/coefficient lists.
fn poly(rs: &RelationSystem, terms: &[(u32, u32, u32, i64)]) -> MultiPoly {
    let ring = rs.ring();
    let mut p = MultiPoly::zero(ring);
    for &(a, b, c, k) in terms {
        let mut m = vec![0u32; ring.nvars()];
        m[ring.var_index("h1").unwrap()] = a;
        m[ring.var_index("f1").unwrap()] = b;
        m[ring.var_index("hS2").unwrap()] = c;
        p.add_term(m, Rat::from_int(k));
    }
    p
}

fn laurent(coeffs: &[i64]) -> LaurentVector {
    let mut v = LaurentVector::zero(2, -3, 5);
    for (i, &c) in coeffs.iter().enumerate() {
        v.set(i % 2, -3 + (i / 2) as i64, Rat::from_int(c)).unwrap();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rat_field_laws(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rat::one());
        }
    }

    #[test]
    fn rat_big_promotion(a in any::<i32>(), b in any::<i32>()) {
        let x = Rat::from_int(a as i64).pow(5);
        let y = Rat::from_int(b as i64).pow(5);
        prop_assert_eq!(&(&x * &y) - &(&y * &x), Rat::zero());
        prop_assert_eq!(&(&x + &y) - &y, x);
    }

    #[test]
    fn rank_of_transpose(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
        let dense: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
        let m = ExactMatrix::from_dense(&dense).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.ncols());
    }

    #[test]
    fn normal_form_is_idempotent(terms in prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -4i64..=4), 0..6)) {
        let rs = two_branch();
        let p = poly(&rs, &terms);
        let nf = normal_form(&p, &rs, 24).unwrap();
        prop_assert_eq!(normal_form(&nf, &rs, 24).unwrap(), nf);
    }

    #[test]
    fn normal_form_is_multiplicative(
        a in prop::collection::vec((0u32..2, 0u32..2, 0u32..2, -3i64..=3), 0..4),
        b in prop::collection::vec((0u32..2, 0u32..2, 0u32..2, -3i64..=3), 0..4),
    ) {
        let rs = two_branch();
        let (p, q) = (poly(&rs, &a), poly(&rs, &b));
        let lhs = normal_form(&p.mul(&q).unwrap(), &rs, 24).unwrap();
        let np = normal_form(&p, &rs, 24).unwrap();
        let nq = normal_form(&q, &rs, 24).unwrap();
        let rhs = normal_form(&np.mul(&nq).unwrap(), &rs, 24).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poly_display_parses_back(terms in prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -4i64..=4), 0..6)) {
        let rs = two_branch();
        let p = poly(&rs, &terms);
        prop_assert_eq!(MultiPoly::parse(rs.ring(), &p.to_string()).unwrap(), p);
    }

    #[test]
    fn laurent_product_laws(
        a in prop::collection::vec(-3i64..=3, 0..8),
        b in prop::collection::vec(-3i64..=3, 0..8),
        c in prop::collection::vec(-3i64..=3, 0..8),
    ) {
        let (x, y, z) = (laurent(&a), laurent(&b), laurent(&c));
        let xy_z = x.mul(&y).unwrap().mul(&z).unwrap();
        let x_yz = x.mul(&y.mul(&z).unwrap()).unwrap();
        let (lo, hi) = (xy_z.window().0.max(x_yz.window().0), xy_z.window().1.min(x_yz.window().1));
        if lo <= hi {
            prop_assert_eq!(xy_z.window_vector(lo, hi).unwrap(), x_yz.window_vector(lo, hi).unwrap());
        }
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn delta_squares_to_zero(seed in any::<u64>(), s in 1usize..4, t in -3i32..=0) {
        let e = cusp();
        let mut r = rng(seed);
        let phi = random_cochain(&mut r, &CochainBasis::new(&e, s, t), 0.5);
        let d = apply_differential(&e, &phi).unwrap();
        prop_assert!(apply_differential(&e, &d).unwrap().is_zero());
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>()) {
        let e = cusp();
        let mut r = rng(seed);
        let f = random_cochain(&mut r, &CochainBasis::new(&e, 2, -1), 0.5);
        let g = random_cochain(&mut r, &CochainBasis::new(&e, 2, 0), 0.5);
        let h = random_cochain(&mut r, &CochainBasis::new(&e, 3, -1), 0.5);
        let lhs = gerstenhaber(&e, &f, &gerstenhaber(&e, &g, &h));
        let sign = if (f.sdeg() * g.sdeg()) % 2 == 0 { Rat::one() } else { -Rat::one() };
        let rhs = gerstenhaber(&e, &gerstenhaber(&e, &f, &g), &h)
            .plus(&gerstenhaber(&e, &g, &gerstenhaber(&e, &f, &h)).scaled(&sign));
        prop_assert_eq!(lhs.normalized(&e), rhs.normalized(&e));
    }

    #[test]
    fn gauge_identity_laws(seed in any::<u64>()) {
        let e = cusp();
        let mut r = rng(seed);
        let f = random_gauge(&mut r, &e, 5, 0.4);
        let id = GaugeTransform::identity(e.clone(), 5);
        prop_assert_eq!(group_mul(&f, &id), f.clone());
        prop_assert_eq!(group_mul(&id, &f), f.clone());
        let trivial = AnStructure::trivial(e.clone(), 5);
        prop_assert_eq!(gauge_act(&id, &trivial), trivial);
    }
}
