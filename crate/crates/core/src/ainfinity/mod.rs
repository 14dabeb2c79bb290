//! Minimal A_N-structures on E_W, the truncated gauge group, normal forms
//! and obstructions.
//!
//! An A_N-structure is (m₃,…,m_N) with m_k of arity k and internal degree
//! 2−k; m₂ is the suspended product and m₁ = 0. It is required to satisfy
//! every A∞ identity not involving m_{>N}, i.e. (m∘m)_r = 0 for
//! r = 3..N+1.

mod gauge;
mod moduli;
mod normal;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hochschild::{brace, ms2, Cochain, CochainJson};
use crate::linalg::Rat;
use crate::quiver::{build_ew, EWAlgebra, SubspaceW};

pub use gauge::{gauge_act, group_mul, identity_cochain, multi_compose};
pub use moduli::{emit_moduli_equations, ModuliSystem, ModuliSystemJson};
pub use normal::{
    equivalent, extend_step, normalize, tangent_dims, Equivalence, Extension, NormalForm, Normalizer, TangentReport,
};

#[derive(Clone, Debug)]
pub struct AnStructure {
    algebra: Arc<EWAlgebra>,
    order: usize,
    /// m_3, …, m_N.
    components: Vec<Cochain>,
}

impl PartialEq for AnStructure {
    fn eq(&self, other: &AnStructure) -> bool {
        self.order == other.order && self.algebra.w().same_as(other.algebra.w()) && self.components == other.components
    }
}

impl AnStructure {
    pub fn trivial(algebra: Arc<EWAlgebra>, order: usize) -> AnStructure {
        assert!(order >= 2, "order must be at least 2");
        let components = (3..=order).map(|k| Cochain::zero(k, 2 - k as i32)).collect();
        AnStructure { algebra, order, components }
    }

    pub fn new(algebra: Arc<EWAlgebra>, order: usize, components: Vec<Cochain>) -> Result<AnStructure> {
        if order < 2 || components.len() != order - 2 {
            return Err(Error::Invalid(format!("expected components m_3..m_{order}")));
        }
        for (k, c) in (3..).zip(&components) {
            if c.s != k || c.t != 2 - k as i32 || !c.is_well_formed(&algebra) {
                return Err(Error::Invalid(format!("m_{k} has the wrong bidegree or shape")));
            }
        }
        Ok(AnStructure { algebra, order, components })
    }

    pub fn algebra(&self) -> &Arc<EWAlgebra> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// m_k for 3 ≤ k ≤ N.
    pub fn m(&self, k: usize) -> &Cochain {
        &self.components[k - 3]
    }

    pub fn set_m(&mut self, k: usize, c: Cochain) {
        assert!(c.s == k && c.t == 2 - k as i32, "bidegree mismatch");
        self.components[k - 3] = c;
    }

    pub fn components(&self) -> &[Cochain] {
        &self.components
    }

    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// The same structure truncated to order `n ≤ N`.
    pub fn truncate(&self, n: usize) -> AnStructure {
        assert!(n >= 2 && n <= self.order);
        AnStructure { algebra: self.algebra.clone(), order: n, components: self.components[..n - 2].to_vec() }
    }

    /// Append m_{N+1}.
    pub fn extended(&self, next: Cochain) -> AnStructure {
        let mut out = self.clone();
        out.order += 1;
        assert!(next.s == out.order && next.t == 2 - out.order as i32);
        out.components.push(next);
        out
    }

    /// m_k with m₂ the suspended product (k ≥ 2).
    fn m_full(&self, k: usize, m2: &Cochain) -> Cochain {
        if k == 2 {
            m2.clone()
        } else {
            self.m(k).clone()
        }
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            n: self.algebra.n(),
            g: self.algebra.g(),
            w: self.algebra.w().rows().to_dense(),
            order: self.order,
            components: self.components.iter().map(|c| c.to_json(&self.algebra)).collect(),
        }
    }

    pub fn from_json(j: &StructureJson) -> Result<AnStructure> {
        let algebra = Arc::new(algebra_from_json(j.n, j.g, &j.w)?);
        let components = j.components.iter().map(|c| Cochain::from_json(&algebra, c)).collect::<Result<Vec<_>>>()?;
        AnStructure::new(algebra, j.order, components)
    }
}

pub(crate) fn algebra_from_json(n: usize, g: usize, w: &[Vec<Rat>]) -> Result<EWAlgebra> {
    let w = SubspaceW::from_rows(n, w)?;
    if w.g() != g {
        return Err(Error::Invalid(format!("W has codimension {}, expected g = {g}", w.g())));
    }
    Ok(build_ew(&w))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureJson {
    pub n: usize,
    pub g: usize,
    pub w: Vec<Vec<Rat>>,
    pub order: usize,
    pub components: Vec<CochainJson>,
}

/// Element of the truncated gauge group: (f₂,…,f_{N−1}), f₁ = id.
#[derive(Clone, Debug)]
pub struct GaugeTransform {
    algebra: Arc<EWAlgebra>,
    order: usize,
    /// f_2, …, f_{N−1}.
    components: Vec<Cochain>,
}

impl PartialEq for GaugeTransform {
    fn eq(&self, other: &GaugeTransform) -> bool {
        self.order == other.order && self.algebra.w().same_as(other.algebra.w()) && self.components == other.components
    }
}

impl GaugeTransform {
    pub fn identity(algebra: Arc<EWAlgebra>, order: usize) -> GaugeTransform {
        let components = (2..order).map(|k| Cochain::zero(k, 1 - k as i32)).collect();
        GaugeTransform { algebra, order, components }
    }

    pub fn new(algebra: Arc<EWAlgebra>, order: usize, components: Vec<Cochain>) -> Result<GaugeTransform> {
        if order < 2 || components.len() != order.saturating_sub(2) {
            return Err(Error::Invalid(format!("expected components f_2..f_{}", order.saturating_sub(1))));
        }
        for (k, c) in (2..).zip(&components) {
            if c.s != k || c.t != 1 - k as i32 || !c.is_well_formed(&algebra) {
                return Err(Error::Invalid(format!("f_{k} has the wrong bidegree or shape")));
            }
        }
        Ok(GaugeTransform { algebra, order, components })
    }

    pub fn algebra(&self) -> &Arc<EWAlgebra> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// f_k for 2 ≤ k ≤ N−1.
    pub fn f(&self, k: usize) -> &Cochain {
        &self.components[k - 2]
    }

    pub fn set_f(&mut self, k: usize, c: Cochain) {
        assert!(c.s == k && c.t == 1 - k as i32, "bidegree mismatch");
        self.components[k - 2] = c;
    }

    pub fn components(&self) -> &[Cochain] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self) -> GaugeJson {
        GaugeJson {
            n: self.algebra.n(),
            g: self.algebra.g(),
            w: self.algebra.w().rows().to_dense(),
            order: self.order,
            components: self.components.iter().map(|c| c.to_json(&self.algebra)).collect(),
        }
    }

    pub fn from_json(j: &GaugeJson) -> Result<GaugeTransform> {
        let algebra = Arc::new(algebra_from_json(j.n, j.g, &j.w)?);
        let components = j.components.iter().map(|c| Cochain::from_json(&algebra, c)).collect::<Result<Vec<_>>>()?;
        GaugeTransform::new(algebra, j.order, components)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeJson {
    pub n: usize,
    pub g: usize,
    pub w: Vec<Vec<Rat>>,
    pub order: usize,
    pub components: Vec<CochainJson>,
}

/// Residuals (m∘m)_r = Σ_{i+j=r+1} m_i∘m_j for r = 3..N+1 (index 0 is r = 3).
///
/// The r-th residual equals ½ Σ_i [m_i, m_{r+1−i}]; at r = 4 it is δ(m₃).
pub fn defect(m: &AnStructure) -> Vec<Cochain> {
    let e = &m.algebra;
    let m2 = ms2(e);
    let n = m.order;
    (3..=n + 1)
        .map(|r| {
            let mut acc = Cochain::zero(r, 3 - r as i32);
            for i in 2..=n.min(r - 1) {
                let j = r + 1 - i;
                if j < 2 || j > n {
                    continue;
                }
                let mi = m.m_full(i, &m2);
                let mj = m.m_full(j, &m2);
                acc.add_scaled(&brace(e, &mi, &mj), &Rat::one());
            }
            acc.normalized(e)
        })
        .collect()
}

pub fn is_defect_free(m: &AnStructure) -> bool {
    defect(m).iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::apply_differential;

    fn cusp() -> Arc<EWAlgebra> {
        Arc::new(build_ew(&SubspaceW::zero(1)))
    }

    #[test]
    fn trivial_has_no_defect() {
        let m = AnStructure::trivial(cusp(), 6);
        assert!(defect(&m).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn arity_four_residual_is_delta_m3() {
        let e = cusp();
        let basis = crate::hochschild::CochainBasis::new(&e, 3, -1);
        let mut m3 = Cochain::zero(3, -1);
        for i in 0..basis.len() {
            m3.add_term(basis.keys()[i].clone(), Rat::from_int(i as i64 % 3 - 1));
        }
        let mut m = AnStructure::trivial(e.clone(), 3);
        m.set_m(3, m3.clone());
        let d = defect(&m);
        assert_eq!(d[1], apply_differential(&e, &m3).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let e = cusp();
        let basis = crate::hochschild::CochainBasis::new(&e, 4, -2);
        let mut m = AnStructure::trivial(e, 4);
        m.set_m(4, basis.basis_cochain(0).scaled(&Rat::new(-2, 3)));
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let back = AnStructure::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), s);
    }
}
