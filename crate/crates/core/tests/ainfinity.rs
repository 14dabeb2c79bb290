mod common;

use std::sync::Arc;

use amoduli::ainfinity::{
    defect, emit_moduli_equations, equivalent, extend_step, gauge_act, group_mul, is_defect_free, normalize,
    tangent_dims, AnStructure, Extension, Normalizer,
};
use amoduli::linalg::Rat;
use amoduli::quiver::{build_ew, SubspaceW};
use amoduli::random::{random_gauge, random_structure, random_w, rng};

fn algebra(n: usize, g: usize, seed: u64) -> Arc<amoduli::quiver::EWAlgebra> {
    Arc::new(build_ew(&random_w(&mut rng(seed), n, g)))
}

#[test]
fn gauge_orbit_of_trivial_normalizes_back() {
    for (n, g) in [(1, 1), (2, 1)] {
        let e = algebra(n, g, 21);
        let mut r = rng(22);
        let mut norm = Normalizer::new(e.clone(), 6);
        let trivial = AnStructure::trivial(e.clone(), 6);
        for _ in 0..10 {
            let f = random_gauge(&mut r, &e, 6, 0.3);
            let m = gauge_act(&f, &trivial);
            assert!(is_defect_free(&m));
            let (nf, witness) = norm.normalize(&m).unwrap();
            assert_eq!(nf.structure, trivial);
            assert_eq!(gauge_act(&witness, &m), nf.structure);
        }
    }
}

#[test]
fn action_is_compatible_with_group_law() {
    let e = algebra(2, 1, 23);
    let norm = Normalizer::new(e.clone(), 6);
    let mut r = rng(24);
    for _ in 0..5 {
        let m = random_structure(&mut r, &norm, 6, 0.2).expect("unobstructed");
        let f = random_gauge(&mut r, &e, 6, 0.2);
        let g = random_gauge(&mut r, &e, 6, 0.2);
        assert_eq!(gauge_act(&f, &gauge_act(&g, &m)), gauge_act(&group_mul(&f, &g), &m));
    }
}

#[test]
fn group_law_is_associative() {
    let e = algebra(1, 1, 25);
    let mut r = rng(26);
    for _ in 0..5 {
        let f = random_gauge(&mut r, &e, 6, 0.3);
        let g = random_gauge(&mut r, &e, 6, 0.3);
        let h = random_gauge(&mut r, &e, 6, 0.3);
        assert_eq!(group_mul(&group_mul(&f, &g), &h), group_mul(&f, &group_mul(&g, &h)));
    }
}

#[test]
fn random_structures_have_normal_forms() {
    for (n, g, order) in [(1, 1, 6), (2, 1, 6), (2, 2, 5)] {
        let e = algebra(n, g, 27);
        let mut norm = Normalizer::new(e.clone(), order);
        let mut r = rng(28);
        let m = random_structure(&mut r, &norm, order, 0.2).expect("unobstructed");
        assert!(defect(&m).iter().all(|c| c.is_zero()));
        let (nf, witness) = norm.normalize(&m).unwrap();
        assert!(norm.is_normal(&nf.structure));
        assert_eq!(gauge_act(&witness, &m), nf.structure);
        // Normalizing a normal form changes nothing.
        let (again, w2) = norm.normalize(&nf.structure).unwrap();
        assert_eq!(again, nf);
        assert!(w2.is_identity());
    }
}

#[test]
fn two_gauges_of_one_structure_are_equivalent() {
    let e = algebra(1, 1, 29);
    let norm = Normalizer::new(e.clone(), 6);
    let mut r = rng(30);
    let m = random_structure(&mut r, &norm, 6, 0.3).expect("unobstructed");
    let a = gauge_act(&random_gauge(&mut r, &e, 6, 0.3), &m);
    let b = gauge_act(&random_gauge(&mut r, &e, 6, 0.3), &m);
    let eq = equivalent(&a, &b).unwrap();
    assert!(eq.equivalent && eq.hypothesis_verified, "{}", eq.status);
    let trivial = AnStructure::trivial(e, 6);
    if normalize(&m).unwrap().0.structure != trivial {
        assert!(!equivalent(&m, &trivial).unwrap().equivalent);
    }
}

#[test]
fn extension_residuals_are_cocycles() {
    let e = algebra(1, 1, 31);
    let norm = Normalizer::new(e.clone(), 6);
    let mut r = rng(32);
    for _ in 0..5 {
        let m = random_structure(&mut r, &norm, 5, 0.3).expect("unobstructed");
        let ext = extend_step(&m).unwrap();
        assert!(ext.residual_is_cocycle());
        if let Extension::Extended { next, .. } = ext {
            assert!(is_defect_free(&m.extended(next)));
        }
    }
}

#[test]
fn defective_input_rejected() {
    let e = algebra(1, 1, 33);
    let basis = amoduli::hochschild::CochainBasis::new(&e, 3, -1);
    let mut m = AnStructure::trivial(e, 4);
    m.set_m(3, basis.basis_cochain(0).scaled(&Rat::from_int(1)));
    if !is_defect_free(&m) {
        assert!(normalize(&m).is_err());
        assert!(extend_step(&m).is_err());
    }
}

#[test]
fn tangent_dimensions() {
    let t = tangent_dims(&SubspaceW::zero(1), 8);
    assert_eq!((t.hh2_total(), t.grassmannian), (2, 0));
    let w = SubspaceW::from_rows(2, &[vec![Rat::one(), Rat::from_int(3)]]).unwrap();
    let t = tangent_dims(&w, 8);
    assert_eq!((t.hh2_total(), t.grassmannian, t.total()), (3, 1, 4));
}

#[test]
fn tangent_golden_two_cusps() {
    let t = tangent_dims(&SubspaceW::zero(2), 7);
    let got: Vec<(usize, usize)> = t.hh2.into_iter().collect();
    let golden: Vec<(usize, usize)> = serde_json::from_str(include_str!("data/tangent_n2_g2.json")).unwrap();
    assert_eq!(got, golden);
    assert_eq!(t.grassmannian, 0);
    let e = build_ew(&SubspaceW::zero(2));
    for (k, d) in golden {
        assert_eq!(common::oracle::oracle_hh(&e, 2, 2 - k as i32), d, "k={k}");
    }
}

#[test]
fn moduli_linearization_matches_tangent() {
    for w in [SubspaceW::zero(1), SubspaceW::from_rows(2, &[vec![Rat::one(), Rat::one()]]).unwrap()] {
        let sys = emit_moduli_equations(&w, 5);
        assert_eq!(sys.linearization_corank(), tangent_dims(&w, 5).hh2_total());
    }
    let rigid = emit_moduli_equations(&SubspaceW::full(1), 5);
    assert_eq!(rigid.linearization_corank(), 0);
}
