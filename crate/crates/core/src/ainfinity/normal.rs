use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{defect, gauge_act, group_mul, AnStructure, GaugeTransform};
use crate::error::{Error, Result};
use crate::hochschild::{apply_differential, bidegree_cells, brace, differential, Cochain, CochainBasis};
use crate::linalg::{sparse, ExactMatrix, Rat, Splitting};
use crate::quiver::{build_ew, EWAlgebra, SubspaceW};

/// Cached data for one arity k: δ¹ from CH¹_{2−k} (arity k−1) to CH²_{2−k}
/// (arity k) and the canonical splitting CH²_{2−k} = K_{2−k} ⊕ im δ¹.
pub struct Slot {
    pub k: usize,
    pub gauge_basis: CochainBasis,
    pub basis: CochainBasis,
    pub delta: ExactMatrix,
    pub splitting: Splitting,
}

impl Slot {
    fn new(e: &EWAlgebra, k: usize) -> Slot {
        let t = 2 - k as i32;
        let gauge_basis = CochainBasis::new(e, k - 1, t);
        let basis = CochainBasis::new(e, k, t);
        let delta = differential(e, k - 1, t);
        let splitting = Splitting::from_rows(basis.len(), delta.transpose().into_rows());
        Slot { k, gauge_basis, basis, delta, splitting }
    }

    /// dim K_{2−k}.
    pub fn complement_dim(&self) -> usize {
        self.splitting.complement_dim()
    }

    /// Basis of K_{2−k} as cochains (standard basis at non-pivot columns).
    pub fn complement_basis(&self) -> Vec<Cochain> {
        self.splitting.complement_coords().into_iter().map(|i| self.basis.basis_cochain(i)).collect()
    }
}

/// Complements K_{2−k} for k = 3..N, computed once per algebra.
pub struct Normalizer {
    algebra: Arc<EWAlgebra>,
    slots: BTreeMap<usize, Slot>,
}

impl Normalizer {
    pub fn new(algebra: Arc<EWAlgebra>, order: usize) -> Normalizer {
        let slots = (3..=order).map(|k| (k, Slot::new(&algebra, k))).collect();
        Normalizer { algebra, slots }
    }

    pub fn algebra(&self) -> &Arc<EWAlgebra> {
        &self.algebra
    }

    pub fn slot(&self, k: usize) -> &Slot {
        &self.slots[&k]
    }

    fn ensure(&mut self, order: usize) {
        for k in 3..=order {
            if !self.slots.contains_key(&k) {
                self.slots.insert(k, Slot::new(&self.algebra, k));
            }
        }
    }

    /// Normal form and a witness g with normal = g·m.
    pub fn normalize(&mut self, m: &AnStructure) -> Result<(NormalForm, GaugeTransform)> {
        if let Some(r) = defect(m).iter().position(|c| !c.is_zero()) {
            return Err(Error::DefectNonzero { arity: r + 3 });
        }
        self.ensure(m.order());
        let e = m.algebra().clone();
        let n = m.order();
        let mut cur = m.clone();
        let mut witness = GaugeTransform::identity(e.clone(), n);
        for k in 3..=n {
            let slot = &self.slots[&k];
            let v = slot.basis.to_vector(cur.m(k))?;
            let (_, sigma) = slot.splitting.split(&v);
            if sigma.is_empty() {
                continue;
            }
            let rhs = sparse::to_dense(&sigma, slot.basis.len());
            let x = slot.delta.solve(&rhs).expect("image component is solvable");
            let x = slot.gauge_basis.from_vector(&sparse::from_dense(&x));
            if k > n {
                continue;
            }
            let mut f = GaugeTransform::identity(e.clone(), n);
            f.set_f(k - 1, x.negated());
            cur = gauge_act(&f, &cur);
            witness = group_mul(&f, &witness);
            debug_assert!(slot.splitting.in_complement(&slot.basis.to_vector(cur.m(k))?));
        }
        Ok((NormalForm { structure: cur }, witness))
    }

    /// Coordinates of each normalized m_k on the complement basis.
    pub fn coordinates(&self, nf: &NormalForm) -> Result<BTreeMap<usize, Vec<Rat>>> {
        let mut out = BTreeMap::new();
        for k in 3..=nf.structure.order() {
            let slot = &self.slots[&k];
            let v = slot.basis.to_vector(nf.structure.m(k))?;
            let coords = slot.splitting.complement_coords();
            let dense = sparse::to_dense(&v, slot.basis.len());
            out.insert(k, coords.iter().map(|&i| dense[i].clone()).collect());
        }
        Ok(out)
    }

    pub fn is_normal(&self, m: &AnStructure) -> bool {
        (3..=m.order()).all(|k| {
            let slot = &self.slots[&k];
            slot.basis.to_vector(m.m(k)).map(|v| slot.splitting.in_complement(&v)).unwrap_or(false)
        })
    }
}

/// An A_N-structure whose every m_k lies in K_{2−k}.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub structure: AnStructure,
}

pub fn normalize(m: &AnStructure) -> Result<(NormalForm, GaugeTransform)> {
    Normalizer::new(m.algebra().clone(), m.order()).normalize(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// HH⁰ and HH¹ vanish at t = −1..−(N−2), so normal forms classify.
    pub hypothesis_verified: bool,
    pub status: String,
}

pub fn equivalent(m: &AnStructure, other: &AnStructure) -> Result<Equivalence> {
    if m.order() != other.order() || !m.algebra().w().same_as(other.algebra().w()) {
        return Err(Error::Invalid("structures live on different algebras or orders".into()));
    }
    let mut norm = Normalizer::new(m.algebra().clone(), m.order());
    let a = norm.normalize(m)?.0;
    let b = norm.normalize(other)?.0;
    let cells: Vec<(i32, i32)> = (1..=m.order() as i32 - 2).flat_map(|j| [(0, -j), (1, -j)]).collect();
    let table = bidegree_cells(m.algebra(), &cells);
    let bad: Vec<String> =
        cells.iter().filter(|&&(i, t)| table.hh(i, t).unwrap_or(0) != 0).map(|(i, t)| format!("HH^{i}_{t}")).collect();
    let hypothesis_verified = bad.is_empty();
    let status = if hypothesis_verified {
        "verified: HH^0 and HH^1 vanish in the relevant negative degrees".to_string()
    } else {
        format!("warning: nonvanishing {}; normal forms may not classify", bad.join(", "))
    };
    Ok(Equivalence { equivalent: a == b, hypothesis_verified, status })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Extension {
    /// m_{N+1} extending the structure to order N+1.
    Extended { next: Cochain, residual_is_cocycle: bool },
    /// The residual is not exact; `class` is its component in the canonical
    /// complement of im δ, a representative of the class in HH³_{1−N}.
    Obstructed { residual: Cochain, class: Cochain, residual_is_cocycle: bool },
}

impl Extension {
    pub fn residual_is_cocycle(&self) -> bool {
        match self {
            Extension::Extended { residual_is_cocycle, .. } => *residual_is_cocycle,
            Extension::Obstructed { residual_is_cocycle, .. } => *residual_is_cocycle,
        }
    }
}

/// o = Σ_{i,j ≥ 3, i+j = N+3} m_i∘m_j, of arity N+2 and internal degree 1−N.
pub fn obstruction_residual(m: &AnStructure) -> Cochain {
    let e = m.algebra();
    let n = m.order();
    let mut o = Cochain::zero(n + 2, 1 - n as i32);
    for i in 3..=n {
        let j = n + 3 - i;
        if !(3..=n).contains(&j) {
            continue;
        }
        o.add_scaled(&brace(e, m.m(i), m.m(j)), &Rat::one());
    }
    o.normalized(e)
}

pub fn extend_step(m: &AnStructure) -> Result<Extension> {
    if let Some(r) = defect(m).iter().position(|c| !c.is_zero()) {
        return Err(Error::DefectNonzero { arity: r + 3 });
    }
    let e = m.algebra();
    let n = m.order();
    let t = 1 - n as i32;
    let o = obstruction_residual(m);
    let residual_is_cocycle = apply_differential(e, &o)?.is_zero();
    if o.is_zero() {
        return Ok(Extension::Extended { next: Cochain::zero(n + 1, t), residual_is_cocycle });
    }
    let dom = CochainBasis::new(e, n + 1, t);
    let cod = CochainBasis::new(e, n + 2, t);
    let delta = differential(e, n + 1, t);
    let rhs = sparse::to_dense(&cod.to_vector(&o)?, cod.len());
    match delta.solve(&rhs) {
        Some(c) => {
            let c = dom.from_vector(&sparse::from_dense(&c));
            Ok(Extension::Extended { next: c.negated(), residual_is_cocycle })
        }
        None => {
            let split = Splitting::from_rows(cod.len(), delta.transpose().into_rows());
            let (kappa, _) = split.split(&cod.to_vector(&o)?);
            Ok(Extension::Obstructed { residual: o, class: cod.from_vector(&kappa), residual_is_cocycle })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    /// k ↦ dim HH²(E_W)_{2−k}, k = 3..N.
    pub hh2: BTreeMap<usize, usize>,
    /// dim T_W G(n−g, n) = g(n−g).
    pub grassmannian: usize,
}

impl TangentReport {
    pub fn hh2_total(&self) -> usize {
        self.hh2.values().sum()
    }

    pub fn total(&self) -> usize {
        self.hh2_total() + self.grassmannian
    }
}

pub fn tangent_dims(w: &SubspaceW, order: usize) -> TangentReport {
    let e = build_ew(w);
    let cells: Vec<(i32, i32)> = (3..=order).map(|k| (2, 2 - k as i32)).collect();
    let table = bidegree_cells(&e, &cells);
    let hh2 = (3..=order).map(|k| (k, table.hh(2, 2 - k as i32).unwrap_or(0))).collect();
    TangentReport { hh2, grassmannian: w.g() * (w.n() - w.g()) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_normalizes_to_itself() {
        let e = Arc::new(build_ew(&SubspaceW::zero(1)));
        let m = AnStructure::trivial(e, 5);
        let (nf, w) = normalize(&m).unwrap();
        assert_eq!(nf.structure, m);
        assert!(w.is_identity());
    }

    #[test]
    fn trivial_extends_by_zero() {
        let e = Arc::new(build_ew(&SubspaceW::zero(1)));
        match extend_step(&AnStructure::trivial(e, 4)).unwrap() {
            Extension::Extended { next, residual_is_cocycle } => {
                assert!(next.is_zero());
                assert!(residual_is_cocycle);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cusp_tangent() {
        let t = tangent_dims(&SubspaceW::zero(1), 8);
        assert_eq!(t.hh2_total(), 2);
        assert_eq!(t.grassmannian, 0);
    }
}
