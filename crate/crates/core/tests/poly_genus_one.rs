use amoduli::curves::{special_curve_algebra, SpecialCurveData};
use amoduli::genus_one::{
    bundle_glue_check, hilbert_a, transition, transition_chart, transition_symbolic, u1_relations,
    weighted_proj_compare, HilbertSpec, Regime, U1Chart,
};
use amoduli::linalg::Rat;
use amoduli::poly::{closure_check, normal_form, LaurentVector, MultiPoly, RelationSystem, RelationSystemJson};
use amoduli::random::{rng, small_rat};
use rand::Rng;

fn q(n: i64) -> Rat {
    Rat::from_int(n)
}

fn two_branch() -> RelationSystem {
    let d = SpecialCurveData::new(2, vec![1], vec![vec![q(2)]]).unwrap();
    special_curve_algebra(&d).unwrap().system
}

#[test]
fn closure_detects_perturbation() {
    let rs = two_branch();
    assert!(closure_check(&rs, 12).unwrap().verdict.is_pass());
    let ring = rs.ring().clone();
    let idx = rs.relations().iter().position(|r| r.to_string().starts_with("h1*hS2")).unwrap();
    let bad = RelationSystem::new(
        ring.clone(),
        rs.relations()
            .iter()
            .enumerate()
            .map(|(i, r)| if i == idx { MultiPoly::parse(&ring, "h1*hS2 - 3*f1^2").unwrap() } else { r.clone() })
            .collect(),
        "",
    )
    .unwrap();
    let rep = closure_check(&bad, 12).unwrap();
    assert!(!rep.verdict.is_pass());
    assert!(rep.failure.is_some());
}

#[test]
fn relation_system_json() {
    let rs = two_branch();
    let j = rs.to_json();
    let s = serde_json::to_string(&j).unwrap();
    let back: RelationSystemJson = serde_json::from_str(&s).unwrap();
    let rs2 = RelationSystem::from_json(&back).unwrap();
    assert_eq!(rs2.relations(), rs.relations());
    let p = MultiPoly::parse(rs.ring(), "f1*hS2").unwrap();
    assert_eq!(normal_form(&p, &rs2, 12).unwrap().to_string(), "2*h1");
}

#[test]
fn laurent_window_product() {
    let t = LaurentVector::monomial(1, 0, 1, q(1), -4, 4).unwrap();
    let one_plus = LaurentVector::one(1, -4, 4).add(&t).unwrap();
    let one_minus = LaurentVector::one(1, -4, 4).sub(&t).unwrap();
    let p = one_plus.mul(&one_minus).unwrap();
    assert_eq!(p.coeff(0, 0).unwrap(), q(1));
    assert_eq!(p.coeff(0, 1).unwrap(), q(0));
    assert_eq!(p.coeff(0, 2).unwrap(), q(-1));
    assert_eq!(p.window(), (-8, 4));
}

#[test]
fn random_charts() {
    let mut r = rng(51);
    for _ in 0..10 {
        let mut c =
            U1Chart::new(small_rat(&mut r, 4), small_rat(&mut r, 4), small_rat(&mut r, 4), small_rat(&mut r, 4));
        if c.a.is_zero() {
            c.a = Rat::new(r.gen_range(1..=5), r.gen_range(1..=5));
        }
        assert!(closure_check(&u1_relations(&c), 12).unwrap().verdict.is_pass());
        let cert = transition(&c).unwrap();
        assert!(cert.verdict.is_pass(), "{cert:?}");
        let u2 = cert.chart.clone().unwrap();
        assert_eq!(cert.s2.clone().unwrap(), &c.a.pow(6) * &c.s());
        assert_eq!(u2.s(), cert.s2.unwrap());
        assert_eq!(transition_chart(&u2).unwrap(), c);
        assert!(bundle_glue_check(&c).unwrap().verdict.is_pass());
    }
}

#[test]
fn symbolic_transition() {
    let cert = transition_symbolic().unwrap();
    assert_eq!(cert.identities.len(), 4);
    assert!(cert.identities.iter().all(|i| i.remainder == "0"));
    assert!(transition(&U1Chart::zero()).is_err());
}

/// Brute-force triple loop over (k, l, m) with t-exponents checked directly.
fn brute(u: &Rat, v: &Rat, n_max: usize) -> Vec<u64> {
    (0..=n_max)
        .map(|n| {
            let nr = q(n as i64);
            let (a, b) = (&nr * u, &nr * v);
            if !a.is_integer() || !b.is_integer() || a.is_negative() || b.is_negative() {
                return 0;
            }
            let d = &(&a + &b) - &nr;
            let Some(d) = d.to_i64() else { return 0 };
            let mut c = 0;
            for k in 0..=d.max(0) {
                for l in 0..=d.max(0) {
                    for m in 0..=d.max(0) {
                        if 2 * k + 3 * l + 4 * m == d {
                            c += 1;
                        }
                    }
                }
            }
            c
        })
        .collect()
}

#[test]
fn hilbert_matches_brute_force() {
    let grid = [(1, 1, 1, 1), (2, 1, 1, 1), (3, 2, 3, 2), (1, 2, 1, 2), (-1, 1, 3, 1), (1, 3, 1, 3), (5, 4, 1, 4)];
    for (a, b, c, d) in grid {
        let (u, v) = (Rat::new(a, b), Rat::new(c, d));
        let spec = HilbertSpec::new(u.clone(), v.clone(), 24);
        assert_eq!(hilbert_a(&spec), brute(&u, &v, 24), "u={u} v={v}");
        let swapped = HilbertSpec::new(v, u, 24);
        assert_eq!(hilbert_a(&spec), hilbert_a(&swapped));
    }
}

#[test]
fn veronese_grid() {
    for (a, b) in [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2)] {
        for (c, d) in [(1, 1), (1, 2), (3, 2), (2, 3)] {
            let spec = HilbertSpec::new(Rat::new(a, b), Rat::new(c, d), 40);
            match spec.regime() {
                Regime::Veronese { .. } => assert!(weighted_proj_compare(&spec).unwrap().verdict.is_pass()),
                _ => assert!(weighted_proj_compare(&spec).is_err()),
            }
        }
    }
    let r = weighted_proj_compare(&HilbertSpec::new(q(2), q(1), 40)).unwrap();
    assert_eq!(r.regime, Regime::Veronese { n0: 1, step: 2 });
}
