//! Genus 1 with two marked points: the chart U₁ with coordinates
//! (a, b, e, π), the transition to U₂, the bundle cocycle and Hilbert
//! functions of the invariant algebras A(u, v).

mod hilbert;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::poly::{closure_check, normal_form, MultiPoly, RelationSystem, Ring, Variable, Verdict};

pub use hilbert::{hilbert_a, veronese_count, weighted_proj_compare, HilbertComparison, HilbertSpec, Regime};

/// Degree bound for every reduction in this module.
pub const DEGREE_BOUND: i64 = 12;

/// A point (a₁₂, b₁₂, e₁₂, π₁) of U₁; s₁ is always derived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct U1Chart {
    pub a: Rat,
    pub b: Rat,
    pub e: Rat,
    pub pi: Rat,
}

impl U1Chart {
    pub fn new(a: Rat, b: Rat, e: Rat, pi: Rat) -> U1Chart {
        U1Chart { a, b, e, pi }
    }

    pub fn zero() -> U1Chart {
        U1Chart::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero())
    }

    /// s = e² − b(π + b²).
    pub fn s(&self) -> Rat {
        &self.e * &self.e - &self.b * &(&self.pi + &(&self.b * &self.b))
    }
}

/// Coefficients of the three chart relations, as polynomials in some ring.
struct Coeffs {
    a: MultiPoly,
    b: MultiPoly,
    e: MultiPoly,
    pi: MultiPoly,
}

impl Coeffs {
    fn numeric(ring: &Arc<Ring>, c: &U1Chart) -> Coeffs {
        let k = |x: &Rat| MultiPoly::constant(ring, x.clone());
        Coeffs { a: k(&c.a), b: k(&c.b), e: k(&c.e), pi: k(&c.pi) }
    }

    fn symbolic(ring: &Arc<Ring>) -> Coeffs {
        let v = |n: &str| MultiPoly::var(ring, n).expect("parameter");
        Coeffs { a: v("a"), b: v("b"), e: v("e"), pi: v("pi") }
    }

    fn s(&self) -> MultiPoly {
        let b2 = m(&self.b, &self.b);
        sub(&m(&self.e, &self.e), &m(&self.b, &add(&self.pi, &b2)))
    }
}

fn m(x: &MultiPoly, y: &MultiPoly) -> MultiPoly {
    x.mul(y).expect("same ring")
}

fn add(x: &MultiPoly, y: &MultiPoly) -> MultiPoly {
    x.add(y).expect("same ring")
}

fn sub(x: &MultiPoly, y: &MultiPoly) -> MultiPoly {
    x.sub(y).expect("same ring")
}

fn generators() -> Vec<Variable> {
    vec![Variable::generator("h1", 3, 1), Variable::generator("f1", 2, 0), Variable::generator("h12", 1, 2)]
}

/// h² = f³ + πf + s, f·h' = a h + b h' + a e,
/// h·h' = a f² + e h' + a b f + a(π + b²), for generators (h, f, h').
fn chart_relations(h: &MultiPoly, f: &MultiPoly, hp: &MultiPoly, c: &Coeffs) -> Vec<MultiPoly> {
    let r1 = sub(&m(h, h), &add(&add(&f.pow(3), &m(&c.pi, f)), &c.s()));
    let r2 = sub(&m(f, hp), &add(&add(&m(&c.a, h), &m(&c.b, hp)), &m(&c.a, &c.e)));
    let b2 = m(&c.b, &c.b);
    let r3 = sub(
        &m(h, hp),
        &add(&add(&add(&m(&c.a, &f.pow(2)), &m(&c.e, hp)), &m(&m(&c.a, &c.b), f)), &m(&c.a, &add(&c.pi, &b2))),
    );
    vec![r1, r2, r3]
}

const CLAIMED: &str = "f1^m, f1^m*h1 (m >= 0), h12^m (m >= 1)";

/// The U₁ relations with numeric coefficients.
pub fn u1_relations(c: &U1Chart) -> RelationSystem {
    let ring = Ring::new(generators()).expect("valid names");
    let v = |n: &str| MultiPoly::var(&ring, n).expect("generator");
    let rels = chart_relations(&v("h1"), &v("f1"), &v("h12"), &Coeffs::numeric(&ring, c));
    RelationSystem::new(ring.clone(), rels, CLAIMED).expect("same ring")
}

/// The U₁ relations over Q[a, a⁻¹, b, e, π], with a·ainv = 1 adjoined.
pub fn u1_relations_symbolic() -> RelationSystem {
    let mut vars = generators();
    for p in ["a", "ainv", "b", "e", "pi"] {
        vars.push(Variable::parameter(p));
    }
    let ring = Ring::new(vars).expect("valid names");
    let v = |n: &str| MultiPoly::var(&ring, n).expect("variable");
    let mut rels = chart_relations(&v("h1"), &v("f1"), &v("h12"), &Coeffs::symbolic(&ring));
    rels.push(sub(&m(&v("a"), &v("ainv")), &MultiPoly::one(&ring)));
    RelationSystem::new(ring.clone(), rels, CLAIMED).expect("same ring")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub remainder: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionCertificate {
    /// The U₂ chart (a₂₁, b₂₁, e₂₁, π₂); absent for the symbolic run.
    pub chart: Option<U1Chart>,
    pub s2: Option<Rat>,
    pub identities: Vec<Identity>,
    pub closure: Verdict,
    pub verdict: Verdict,
}

/// f₂, h₂, h₂₁ and the U₂ coefficients expressed in the U₁ ring, then the
/// U₂ relations reduced modulo the U₁ relations.
fn certify(rs: &RelationSystem, a: &MultiPoly, ainv: &MultiPoly, c: &Coeffs) -> Result<Vec<Identity>> {
    let ring = rs.ring();
    let v = |n: &str| MultiPoly::var(ring, n).expect("generator");
    let (h1, f1, h12) = (v("h1"), v("f1"), v("h12"));
    let k = |x: i64| MultiPoly::constant(ring, Rat::from_int(x));
    let a2 = m(a, a);
    let a3 = m(&a2, a);
    let a4 = m(&a3, a);
    let a6 = m(&a4, &a2);
    let f2 = sub(&sub(&h12.pow(2), &m(&a2, &f1)), &m(&a2, &c.b));
    let h2 = sub(&sub(&sub(&h12.pow(3), &m(&a3, &h1)), &m(&m(&k(3), &m(&a2, &c.b)), &h12)), &m(&k(2), &m(&a3, &c.e)));
    let h21 = m(ainv, &h12);
    let c2 = Coeffs { a: ainv.clone(), b: m(&a2, &c.b), e: m(&a3, &c.e), pi: m(&a4, &c.pi) };
    let s2_formula = c2.s();
    let s2_scaled = m(&a6, &c.s());
    let mut out = Vec::new();
    let names = [
        "h2^2 = f2^3 + pi2*f2 + s2",
        "f2*h21 = a21*h2 + b21*h21 + a21*e21",
        "h2*h21 = a21*f2^2 + e21*h21 + a21*b21*f2 + a21*(pi2 + b21^2)",
    ];
    for (name, r) in names.iter().zip(chart_relations(&h2, &f2, &h21, &c2)) {
        let nf = normal_form(&r, rs, DEGREE_BOUND)?;
        out.push(Identity { name: name.to_string(), remainder: nf.to_string() });
    }
    let nf = normal_form(&sub(&s2_formula, &s2_scaled), rs, DEGREE_BOUND)?;
    out.push(Identity { name: "e21^2 - b21*(pi2 + b21^2) = a^6*s1".into(), remainder: nf.to_string() });
    Ok(out)
}

fn finish(
    chart: Option<U1Chart>,
    s2: Option<Rat>,
    identities: Vec<Identity>,
    closure: Verdict,
) -> TransitionCertificate {
    let ok = closure.is_pass() && identities.iter().all(|i| i.remainder == "0");
    TransitionCertificate { chart, s2, identities, closure, verdict: Verdict::from_bool(ok) }
}

/// The U₂ chart of c and the certificate that the transformed f₂, h₂, h₂₁
/// satisfy the U₂ relations modulo the U₁ relations.
pub fn transition(c: &U1Chart) -> Result<TransitionCertificate> {
    if c.a.is_zero() {
        return Err(Error::Invalid("transition needs a12 != 0".into()));
    }
    let rs = u1_relations(c);
    let closure = closure_check(&rs, DEGREE_BOUND)?.verdict;
    let ring = rs.ring();
    let coeffs = Coeffs::numeric(ring, c);
    let ainv = MultiPoly::constant(ring, c.a.recip());
    let ids = certify(&rs, &coeffs.a, &ainv, &coeffs)?;
    let u2 = transition_chart(c)?;
    let s2 = u2.s();
    Ok(finish(Some(u2), Some(s2), ids, closure))
}

/// Over Q(a, b, e, π) with a inverted.
pub fn transition_symbolic() -> Result<TransitionCertificate> {
    let rs = u1_relations_symbolic();
    let closure = closure_check(&rs, DEGREE_BOUND)?.verdict;
    let ring = rs.ring();
    let coeffs = Coeffs::symbolic(ring);
    let ainv = MultiPoly::var(ring, "ainv")?;
    let ids = certify(&rs, &coeffs.a, &ainv, &coeffs)?;
    Ok(finish(None, None, ids, closure))
}

/// (a, b, e, π) ↦ (1/a, a²b, a³e, a⁴π).
pub fn transition_chart(c: &U1Chart) -> Result<U1Chart> {
    if c.a.is_zero() {
        return Err(Error::Invalid("transition needs a12 != 0".into()));
    }
    let a = &c.a;
    Ok(U1Chart::new(a.recip(), &a.pow(2) * &c.b, &a.pow(3) * &c.e, &a.pow(4) * &c.pi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleCheck {
    /// t₁²b₂₁ − t₂²b₁₂, t₁³e₂₁ − t₂³e₁₂, t₁⁴π₂ − t₂⁴π₁ at (t₁ : t₂) = (1 : a).
    pub residuals: Vec<String>,
    pub symbolic_residuals: Vec<String>,
    pub verdict: Verdict,
}

fn bundle_residuals(t1: &MultiPoly, t2: &MultiPoly, c1: &Coeffs, c2: &Coeffs) -> Vec<MultiPoly> {
    vec![
        sub(&m(&t1.pow(2), &c2.b), &m(&t2.pow(2), &c1.b)),
        sub(&m(&t1.pow(3), &c2.e), &m(&t2.pow(3), &c1.e)),
        sub(&m(&t1.pow(4), &c2.pi), &m(&t2.pow(4), &c1.pi)),
    ]
}

/// The O(−2) ⊕ O(−3) ⊕ O(−4) cocycle identities, numerically at c and
/// symbolically in (a, b, e, π).
pub fn bundle_glue_check(c: &U1Chart) -> Result<BundleCheck> {
    let u2 = transition_chart(c)?;
    let ring = Ring::new(vec![]).expect("empty ring");
    let k = |x: &Rat| MultiPoly::constant(&ring, x.clone());
    let c1 = Coeffs::numeric(&ring, c);
    let c2 = Coeffs::numeric(&ring, &u2);
    let residuals: Vec<String> =
        bundle_residuals(&k(&Rat::one()), &k(&c.a), &c1, &c2).iter().map(|p| p.to_string()).collect();
    let pring = Ring::new(["a", "b", "e", "pi"].iter().map(|p| Variable::parameter(p)).collect())?;
    let s1 = Coeffs::symbolic(&pring);
    let a = &s1.a;
    let s2 =
        Coeffs { a: MultiPoly::zero(&pring), b: m(&a.pow(2), &s1.b), e: m(&a.pow(3), &s1.e), pi: m(&a.pow(4), &s1.pi) };
    let symbolic_residuals: Vec<String> =
        bundle_residuals(&MultiPoly::one(&pring), a, &s1, &s2).iter().map(|p| p.to_string()).collect();
    let ok = residuals.iter().chain(&symbolic_residuals).all(|r| r == "0");
    Ok(BundleCheck { residuals, symbolic_residuals, verdict: Verdict::from_bool(ok) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn special_fiber() {
        let rs = u1_relations(&U1Chart::zero());
        let rels: Vec<String> = rs.relations().iter().map(|r| r.to_string()).collect();
        assert_eq!(rels, vec!["h1^2 - f1^3", "f1*h12", "h1*h12"]);
        assert!(closure_check(&rs, 12).unwrap().verdict.is_pass());
    }

    #[test]
    fn s_value() {
        assert_eq!(U1Chart::new(q(1), q(1), q(0), q(0)).s(), q(-1));
    }

    #[test]
    fn unit_chart_transition() {
        let c = U1Chart::new(q(1), q(1), q(0), q(0));
        let cert = transition(&c).unwrap();
        assert_eq!(cert.chart, Some(U1Chart::new(q(1), q(1), q(0), q(0))));
        assert_eq!(cert.s2, Some(q(-1)));
        assert!(cert.verdict.is_pass(), "{cert:?}");
    }

    #[test]
    fn symbolic_certificate() {
        let cert = transition_symbolic().unwrap();
        assert!(cert.identities.iter().all(|i| i.remainder == "0"), "{cert:?}");
        assert!(cert.verdict.is_pass());
    }

    #[test]
    fn wrong_transition_detected() {
        let rs = u1_relations_symbolic();
        let ring = rs.ring();
        let v = |n: &str| MultiPoly::var(ring, n).unwrap();
        let c = Coeffs::symbolic(ring);
        let a2 = m(&c.a, &c.a);
        let f2 = sub(&v("h12").pow(2), &m(&a2, &v("f1")));
        let h2 = sub(&v("h12").pow(3), &m(&m(&a2, &c.a), &v("h1")));
        let c2 = Coeffs { a: v("ainv"), b: m(&a2, &c.b), e: m(&m(&a2, &c.a), &c.e), pi: m(&m(&a2, &a2), &c.pi) };
        let rels = chart_relations(&h2, &f2, &m(&v("ainv"), &v("h12")), &c2);
        assert!(rels.iter().any(|r| !normal_form(r, &rs, DEGREE_BOUND).unwrap().is_zero()));
    }

    #[test]
    fn involution_and_bundle() {
        let c = U1Chart::new(Rat::new(-2, 3), q(5), Rat::new(1, 7), q(-4));
        assert_eq!(transition_chart(&transition_chart(&c).unwrap()).unwrap(), c);
        assert!(transition_chart(&U1Chart::zero()).is_err());
        assert!(bundle_glue_check(&c).unwrap().verdict.is_pass());
    }
}
