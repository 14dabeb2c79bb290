use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::Normalizer;
use crate::hochschild::{brace, ms2, Cochain, Key};
use crate::linalg::{sparse, SparseVec};
use crate::poly::{MultiPoly, Ring, Variable};
use crate::quiver::{build_ew, SubspaceW};

/// Polynomial equations on the coordinates of (κ₃,…,κ_N) ∈ ⊕ K_{2−k}
/// expressing the A_N identities at arities 3..N+1.
#[derive(Clone, Debug)]
pub struct ModuliSystem {
    pub ring: Arc<Ring>,
    /// (k, basis cochain of K_{2−k}) for each unknown, in variable order.
    pub unknowns: Vec<(usize, Cochain)>,
    pub equations: Vec<MultiPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuliSystemJson {
    pub unknowns: Vec<UnknownJson>,
    pub equations: Vec<String>,
    pub linearization_corank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnknownJson {
    pub name: String,
    pub arity: usize,
    pub args: Vec<String>,
    pub value: String,
}

impl ModuliSystem {
    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// nvars − rank of the Jacobian at the origin.
    pub fn linearization_corank(&self) -> usize {
        let n = self.ring.nvars();
        let rows: Vec<SparseVec> = self
            .equations
            .iter()
            .map(|p| {
                let mut row: SparseVec = p
                    .terms()
                    .iter()
                    .filter(|(m, _)| m.iter().sum::<u32>() == 1)
                    .map(|(m, c)| (m.iter().position(|&e| e == 1).expect("linear"), c.clone()))
                    .collect();
                row.sort_by_key(|(i, _)| *i);
                row
            })
            .collect();
        n - sparse::rank(n, rows)
    }

    pub fn to_json(&self, e: &crate::quiver::EWAlgebra) -> ModuliSystemJson {
        let unknowns = self
            .unknowns
            .iter()
            .enumerate()
            .map(|(i, (k, c))| {
                let ((args, y), _) = c.entries.iter().next().expect("basis cochain");
                UnknownJson {
                    name: self.ring.name(i).to_string(),
                    arity: *k,
                    args: args.iter().map(|&x| e.label(x as usize).to_string()).collect(),
                    value: e.label(*y as usize).to_string(),
                }
            })
            .collect();
        ModuliSystemJson {
            unknowns,
            equations: self.equations.iter().map(|p| p.to_string()).collect(),
            linearization_corank: self.linearization_corank(),
        }
    }
}

pub fn emit_moduli_equations(w: &SubspaceW, order: usize) -> ModuliSystem {
    let e = Arc::new(build_ew(w));
    let norm = Normalizer::new(e.clone(), order);
    let mut unknowns = Vec::new();
    let mut vars = Vec::new();
    for k in 3..=order {
        for (a, c) in norm.slot(k).complement_basis().into_iter().enumerate() {
            vars.push(Variable::generator(&format!("c{k}_{a}"), 1, 0));
            unknowns.push((k, c));
        }
    }
    let ring = Ring::new(vars).expect("generated names are valid");
    let nv = ring.nvars();
    let var_mono = |i: usize| {
        let mut m = vec![0u32; nv];
        m[i] = 1;
        m
    };
    // Each m_k (k ≥ 3) is Σ c·K; m₂ is fixed.
    let by_arity: BTreeMap<usize, Vec<(usize, &Cochain)>> =
        unknowns.iter().enumerate().fold(BTreeMap::new(), |mut acc, (i, (k, c))| {
            acc.entry(*k).or_insert_with(Vec::new).push((i, c));
            acc
        });
    let m2 = ms2(&e);
    let mut equations = Vec::new();
    for r in 3..=order + 1 {
        let mut acc: BTreeMap<Key, MultiPoly> = BTreeMap::new();
        let mut add = |c: &Cochain, mono: Vec<u32>| {
            for (key, v) in &c.entries {
                acc.entry(key.clone()).or_insert_with(|| MultiPoly::zero(&ring)).add_term(mono.clone(), v.clone());
            }
        };
        for i in 2..=order.min(r - 1) {
            let j = r + 1 - i;
            if !(2..=order).contains(&j) || (i == 2 && j == 2) {
                continue;
            }
            match (i, j) {
                (2, _) => {
                    for &(b, kb) in by_arity.get(&j).into_iter().flatten() {
                        add(&brace(&e, &m2, kb), var_mono(b));
                    }
                }
                (_, 2) => {
                    for &(a, ka) in by_arity.get(&i).into_iter().flatten() {
                        add(&brace(&e, ka, &m2), var_mono(a));
                    }
                }
                _ => {
                    for &(a, ka) in by_arity.get(&i).into_iter().flatten() {
                        for &(b, kb) in by_arity.get(&j).into_iter().flatten() {
                            let mut m = var_mono(a);
                            m[b] += 1;
                            add(&brace(&e, ka, kb), m);
                        }
                    }
                }
            }
        }
        equations.extend(acc.into_values().filter(|p| !p.is_zero()));
    }
    ModuliSystem { ring, unknowns, equations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfinity::tangent_dims;

    #[test]
    fn corank_matches_tangent() {
        let w = SubspaceW::zero(1);
        let sys = emit_moduli_equations(&w, 5);
        assert_eq!(sys.linearization_corank(), tangent_dims(&w, 5).hh2_total());
    }
}
