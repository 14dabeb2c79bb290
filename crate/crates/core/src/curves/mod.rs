//! Special curves: the graded algebra on generators f_i, h_i (i ∈ S) and
//! h_{S,j} (j ∉ S), its embedding ρ into ⊕ k[x_i], basis checks, Krichever
//! windows and gluing.

mod glue;
mod krichever;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sparse, Echelon, Rat, SparseVec};
use crate::poly::{normal_form, standard_monomials, Monomial, MultiPoly, RelationSystem, Ring, Variable, Verdict};
use crate::quiver::SubspaceW;

pub use glue::{glue, CurveModel, GluePoint, GlueReport};
pub use krichever::{
    adequate_depth, krichever_model, krichever_stable, krichever_window, KricheverReport, KricheverWindow,
};

/// n marked branches, the genus-carrying subset S and the matrix (a_ij),
/// rows indexed by S and columns by the complement, both increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialCurveData {
    pub n: usize,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub a: Vec<Vec<Rat>>,
}

impl SpecialCurveData {
    pub fn new(n: usize, s: Vec<usize>, a: Vec<Vec<Rat>>) -> Result<SpecialCurveData> {
        let d = SpecialCurveData { n, s, a };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        if !self.s.windows(2).all(|w| w[0] < w[1]) || self.s.iter().any(|&i| i == 0 || i > self.n) {
            return Err(Error::Invalid(format!("S must be an increasing subset of 1..{}", self.n)));
        }
        let g = self.s.len();
        let c = self.n - g;
        let rows_ok = if c == 0 {
            self.a.iter().all(|r| r.is_empty()) && (self.a.is_empty() || self.a.len() == g)
        } else {
            self.a.len() == g && self.a.iter().all(|r| r.len() == c)
        };
        if !rows_ok {
            return Err(Error::Dimension(format!("a must be {g}x{c}")));
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.s.len()
    }

    /// Indices j ∉ S, increasing.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|j| !self.s.contains(j)).collect()
    }

    /// a_ij for i ∈ S, j ∉ S (1-based labels).
    pub fn a_ij(&self, i: usize, j: usize) -> Rat {
        let r = self.s.iter().position(|&x| x == i).expect("i in S");
        let c = self.complement().iter().position(|&x| x == j).expect("j not in S");
        self.a[r][c].clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentType {
    Cuspidal,
    Rational,
}

/// Cuspidal iff a_{i·} vanishes.
pub fn component_type(d: &SpecialCurveData, i: usize) -> Result<ComponentType> {
    if !d.s.contains(&i) {
        return Err(Error::Invalid(format!("{i} is not in S")));
    }
    let zero = d.complement().iter().all(|&j| d.a_ij(i, j).is_zero());
    Ok(if zero { ComponentType::Cuspidal } else { ComponentType::Rational })
}

/// span(e_j + Σ_{i∈S} a_ij e_i : j ∉ S).
pub fn grassmannian_point(d: &SpecialCurveData) -> SubspaceW {
    let rows: Vec<Vec<Rat>> = d
        .complement()
        .into_iter()
        .map(|j| {
            let mut r = vec![Rat::zero(); d.n];
            r[j - 1] = Rat::one();
            for &i in &d.s {
                r[i - 1] = d.a_ij(i, j);
            }
            r
        })
        .collect();
    if rows.is_empty() {
        SubspaceW::zero(d.n)
    } else {
        SubspaceW::from_rows(d.n, &rows).expect("rows are independent on the complement")
    }
}

#[derive(Clone, Debug)]
pub struct CurveAlgebraPresentation {
    pub data: SpecialCurveData,
    pub system: RelationSystem,
}

pub fn f_name(i: usize) -> String {
    format!("f{i}")
}

pub fn h_name(i: usize) -> String {
    format!("h{i}")
}

pub fn hs_name(j: usize) -> String {
    format!("hS{j}")
}

impl CurveAlgebraPresentation {
    pub fn ring(&self) -> &Arc<Ring> {
        self.system.ring()
    }

    pub fn var(&self, name: &str) -> MultiPoly {
        MultiPoly::var(self.ring(), name).expect("generator exists")
    }

    /// The claimed basis f_i^m, f_i^m h_i (m ≥ 0), h_{S,j}^m (m ≥ 1) up to
    /// weighted degree D, with 1 listed once.
    pub fn claimed_basis(&self, max_deg: i64) -> Vec<Monomial> {
        let ring = self.ring();
        let idx = |name: String| ring.var_index(&name).expect("generator");
        let mut out = vec![ring.one()];
        for &i in &self.data.s {
            let (f, h) = (idx(f_name(i)), idx(h_name(i)));
            for m in 0.. {
                if 2 * m > max_deg {
                    break;
                }
                if m > 0 {
                    let mut mono = ring.one();
                    mono[f] = m as u32;
                    out.push(mono);
                }
                if 2 * m + 3 <= max_deg {
                    let mut mono = ring.one();
                    mono[f] = m as u32;
                    mono[h] = 1;
                    out.push(mono);
                }
            }
        }
        for j in self.data.complement() {
            let v = idx(hs_name(j));
            for m in 1..=max_deg {
                let mut mono = ring.one();
                mono[v] = m as u32;
                out.push(mono);
            }
        }
        out.sort_by(|a, b| ring.cmp(a, b));
        out
    }
}

/// Relations of the special curve: f_i f_i' = f_i h_i' = h_i h_i' = 0,
/// h_i² = f_i³, h_{S,j} h_{S,j'} = Σ a_ij a_ij' f_i, f_i h_{S,j} = a_ij h_i,
/// h_i h_{S,j} = a_ij f_i² (i ≠ i', j ≠ j').
pub fn special_curve_algebra(d: &SpecialCurveData) -> Result<CurveAlgebraPresentation> {
    d.validate()?;
    let comp = d.complement();
    let mut vars = Vec::new();
    for &i in &d.s {
        vars.push(Variable::generator(&h_name(i), 3, 1));
    }
    for &i in &d.s {
        vars.push(Variable::generator(&f_name(i), 2, 0));
    }
    for &j in &comp {
        vars.push(Variable::generator(&hs_name(j), 1, 2));
    }
    let ring = Ring::new(vars)?;
    let v = |name: String| MultiPoly::var(&ring, &name).expect("generator");
    let mul = |a: &MultiPoly, b: &MultiPoly| a.mul(b).expect("same ring");
    let sub = |a: &MultiPoly, b: &MultiPoly| a.sub(b).expect("same ring");
    let mut rels = Vec::new();
    for (x, &i) in d.s.iter().enumerate() {
        for &i2 in &d.s[x + 1..] {
            rels.push(mul(&v(f_name(i)), &v(f_name(i2))));
            rels.push(mul(&v(h_name(i)), &v(h_name(i2))));
        }
        for &i2 in &d.s {
            if i2 != i {
                rels.push(mul(&v(f_name(i)), &v(h_name(i2))));
            }
        }
        rels.push(sub(&v(h_name(i)).pow(2), &v(f_name(i)).pow(3)));
    }
    for (y, &j) in comp.iter().enumerate() {
        for &j2 in &comp[y + 1..] {
            let mut rhs = MultiPoly::zero(&ring);
            for &i in &d.s {
                rhs = rhs.add(&v(f_name(i)).scale(&(d.a_ij(i, j) * d.a_ij(i, j2)))).expect("same ring");
            }
            rels.push(sub(&mul(&v(hs_name(j)), &v(hs_name(j2))), &rhs));
        }
    }
    for &i in &d.s {
        for &j in &comp {
            let a = d.a_ij(i, j);
            rels.push(sub(&mul(&v(f_name(i)), &v(hs_name(j))), &v(h_name(i)).scale(&a)));
            rels.push(sub(&mul(&v(h_name(i)), &v(hs_name(j))), &v(f_name(i)).pow(2).scale(&a)));
        }
    }
    let system = RelationSystem::new(ring, rels, "f_i^m, f_i^m*h_i (m >= 0), hS_j^m (m >= 1)")?;
    Ok(CurveAlgebraPresentation { data: d.clone(), system })
}

/// An n-tuple of polynomials, branch b given by its coefficients in x_b.
pub type BranchPoly = Vec<Vec<Rat>>;

fn branch_trim(mut p: BranchPoly) -> BranchPoly {
    for b in &mut p {
        while b.last().is_some_and(|c| c.is_zero()) {
            b.pop();
        }
    }
    p
}

pub fn branch_mul(a: &BranchPoly, b: &BranchPoly) -> BranchPoly {
    let out = a
        .iter()
        .zip(b)
        .map(|(p, q)| {
            if p.is_empty() || q.is_empty() {
                return Vec::new();
            }
            let mut r = vec![Rat::zero(); p.len() + q.len() - 1];
            for (i, x) in p.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in q.iter().enumerate() {
                    r[i + j].add_mul(x, y);
                }
            }
            r
        })
        .collect();
    branch_trim(out)
}

pub fn branch_add_scaled(a: &mut BranchPoly, b: &BranchPoly, c: &Rat) {
    for (p, q) in a.iter_mut().zip(b) {
        if p.len() < q.len() {
            p.resize(q.len(), Rat::zero());
        }
        for (x, y) in p.iter_mut().zip(q) {
            x.add_mul(c, y);
        }
    }
    let t = branch_trim(std::mem::take(a));
    *a = t;
}

/// Branch-major coefficient vector on powers 0..=max_deg.
pub fn branch_vector(p: &BranchPoly, max_deg: usize) -> SparseVec {
    let w = max_deg + 1;
    let mut v = Vec::new();
    for (b, coeffs) in p.iter().enumerate() {
        for (k, c) in coeffs.iter().enumerate() {
            assert!(k <= max_deg, "branch degree exceeds the window");
            if !c.is_zero() {
                v.push((b * w + k, c.clone()));
            }
        }
    }
    v
}

/// Values of the generators in ⊕ k[x_i], extended multiplicatively.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub n: usize,
    pub images: Vec<BranchPoly>,
}

impl Embedding {
    pub fn apply(&self, p: &MultiPoly) -> BranchPoly {
        let mut out: BranchPoly = vec![Vec::new(); self.n];
        let mut powers: BTreeMap<(usize, u32), BranchPoly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut t: BranchPoly = vec![vec![Rat::one()]; self.n];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| {
                        let mut acc: BranchPoly = vec![vec![Rat::one()]; self.n];
                        for _ in 0..e {
                            acc = branch_mul(&acc, &self.images[i]);
                        }
                        acc
                    })
                    .clone();
                t = branch_mul(&t, &pw);
            }
            branch_add_scaled(&mut out, &t, c);
        }
        out
    }

    pub fn apply_monomial(&self, ring: &Arc<Ring>, m: &Monomial) -> BranchPoly {
        self.apply(&MultiPoly::term(ring, m.clone(), Rat::one()))
    }
}

/// ρ(f_i) = x_i², ρ(h_i) = x_i³, ρ(h_{S,j}) = x_j + Σ_{i∈S} a_ij x_i.
pub fn rho(pres: &CurveAlgebraPresentation) -> Embedding {
    let d = &pres.data;
    let ring = pres.ring();
    let mut images = Vec::with_capacity(ring.nvars());
    for var in ring.vars() {
        let name = &var.name;
        let mut img: BranchPoly = vec![Vec::new(); d.n];
        let single = |k: usize| -> Vec<Rat> {
            let mut c = vec![Rat::zero(); k + 1];
            c[k] = Rat::one();
            c
        };
        if let Some(j) = name.strip_prefix("hS") {
            let j: usize = j.parse().expect("index");
            img[j - 1] = single(1);
            for &i in &d.s {
                let a = d.a_ij(i, j);
                if !a.is_zero() {
                    img[i - 1] = vec![Rat::zero(), a];
                }
            }
        } else if let Some(i) = name.strip_prefix('f') {
            img[i.parse::<usize>().expect("index") - 1] = single(2);
        } else if let Some(i) = name.strip_prefix('h') {
            img[i.parse::<usize>().expect("index") - 1] = single(3);
        }
        images.push(img);
    }
    Embedding { n: d.n, images }
}

/// ρ(p) for p of weighted degree ≤ D.
pub fn rho_embed(pres: &CurveAlgebraPresentation, p: &MultiPoly, max_deg: i64) -> Result<BranchPoly> {
    let deg = p.weighted_degree();
    if deg > max_deg {
        return Err(Error::BoundExceeded { bound: max_deg, degree: deg });
    }
    Ok(rho(pres).apply(p))
}

/// ρ with h_{S,j} sent to x_j alone (a corrupted control).
pub fn rho_corrupted(pres: &CurveAlgebraPresentation, j: usize) -> Result<Embedding> {
    let mut e = rho(pres);
    let idx =
        pres.ring().var_index(&hs_name(j)).ok_or_else(|| Error::Invalid(format!("no generator {}", hs_name(j))))?;
    let mut img: BranchPoly = vec![Vec::new(); pres.data.n];
    img[j - 1] = vec![Rat::zero(), Rat::one()];
    e.images[idx] = img;
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub verdict: Verdict,
    pub depth: i64,
    pub claimed: usize,
    pub rank: usize,
    /// Images of the claimed monomials are linearly independent.
    pub independent: bool,
    /// They span the image of every generator monomial of degree ≤ D.
    pub spans: bool,
    /// ρ(m) = ρ(NF(m)) for every generator monomial of degree ≤ D.
    pub compatible: bool,
    /// The claimed monomials are exactly the standard monomials.
    pub claimed_is_standard: bool,
    pub witness: Option<String>,
}

pub fn verify_basis(d: &SpecialCurveData, max_deg: i64) -> Result<BasisReport> {
    let pres = special_curve_algebra(d)?;
    let emb = rho(&pres);
    Ok(verify_basis_with(&pres, &emb, max_deg))
}

pub fn verify_basis_with(pres: &CurveAlgebraPresentation, emb: &Embedding, max_deg: i64) -> BasisReport {
    let ring = pres.ring();
    let du = max_deg.max(0) as usize;
    let cols = pres.data.n * (du + 1);
    let vec_of = |m: &Monomial| branch_vector(&emb.apply_monomial(ring, m), du);
    let claimed = pres.claimed_basis(max_deg);
    let mut ech = Echelon::new(cols);
    for m in &claimed {
        ech.insert(vec_of(m));
    }
    let rank = ech.rank();
    let independent = rank == claimed.len();
    let all = all_monomials(ring, max_deg);
    let mut witness = None;
    let mut spans = true;
    let mut compatible = true;
    for m in &all {
        let v = vec_of(m);
        if spans && !ech.reduce(v.clone()).is_empty() {
            spans = false;
            witness.get_or_insert_with(|| format!("image of {} is outside the span", ring.format_monomial(m)));
        }
        if compatible {
            let p = MultiPoly::term(ring, m.clone(), Rat::one());
            match normal_form(&p, &pres.system, max_deg) {
                Ok(nf) => {
                    let w = branch_vector(&emb.apply(&nf), du);
                    if sparse::normalize(sparse::axpy(&v, &-Rat::one(), &w)) != Vec::new() {
                        compatible = false;
                        witness.get_or_insert_with(|| {
                            format!("rho({}) differs from rho of its normal form {}", ring.format_monomial(m), nf)
                        });
                    }
                }
                Err(e) => {
                    compatible = false;
                    witness.get_or_insert_with(|| e.to_string());
                }
            }
        }
    }
    let standard = standard_monomials(&pres.system, max_deg);
    let claimed_is_standard = standard == claimed;
    if !claimed_is_standard {
        witness.get_or_insert_with(|| "standard monomials differ from the claimed basis".into());
    }
    if !independent {
        witness.get_or_insert_with(|| format!("rank {rank} < {} claimed monomials", claimed.len()));
    }
    BasisReport {
        verdict: Verdict::from_bool(independent && spans && compatible && claimed_is_standard),
        depth: max_deg,
        claimed: claimed.len(),
        rank,
        independent,
        spans,
        compatible,
        claimed_is_standard,
        witness,
    }
}

/// Every generator monomial of weighted degree ≤ d.
fn all_monomials(ring: &Arc<Ring>, d: i64) -> Vec<Monomial> {
    let empty = RelationSystem::new(ring.clone(), vec![], "").expect("same ring");
    standard_monomials(&empty, d)
}
