use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::quiver::EWAlgebra;

/// Argument tuple of basis indices, read left to right.
pub type Tuple = Vec<u8>;

/// `(arguments, value basis element)`.
pub type Key = (Tuple, u8);

/// Suspended degree ‖x‖ = |x| − 1 of a basis element.
pub fn sdeg(e: &EWAlgebra, x: u8) -> i32 {
    e.degree(x as usize) - 1
}

pub fn sign(odd: i32) -> Rat {
    Rat::from_sign(odd.rem_euclid(2) == 0)
}

/// A Hochschild cochain of arity `s` and internal degree `t`, stored as its
/// nonzero coefficients `φ(x_1,…,x_s) = Σ c·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub s: usize,
    pub t: i32,
    pub entries: BTreeMap<Key, Rat>,
}

impl Cochain {
    pub fn zero(s: usize, t: i32) -> Cochain {
        Cochain { s, t, entries: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// ‖φ‖ = s + t − 1.
    pub fn sdeg(&self) -> i32 {
        self.s as i32 + self.t - 1
    }

    pub fn add_term(&mut self, key: Key, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &Rat) {
        debug_assert!(other.is_zero() || (other.s, other.t) == (self.s, self.t));
        for (k, v) in &other.entries {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn plus(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(other, &Rat::one());
        out
    }

    pub fn minus(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        out
    }

    pub fn scaled(&self, c: &Rat) -> Cochain {
        let mut out = Cochain::zero(self.s, self.t);
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> Cochain {
        self.scaled(&-Rat::one())
    }

    /// Drop terms whose arguments include an idempotent.
    pub fn normalized(mut self, e: &EWAlgebra) -> Cochain {
        self.entries.retain(|(tuple, _), _| tuple.iter().all(|&x| !e.is_idempotent(x as usize)));
        self
    }

    /// Grouped view: argument tuple → value vector.
    pub fn by_tuple(&self) -> BTreeMap<&Tuple, Vec<(u8, &Rat)>> {
        let mut out: BTreeMap<&Tuple, Vec<(u8, &Rat)>> = BTreeMap::new();
        for ((tuple, y), c) in &self.entries {
            out.entry(tuple).or_default().push((*y, c));
        }
        out
    }

    /// Checks composability, value endpoints and the degree constraint.
    pub fn is_well_formed(&self, e: &EWAlgebra) -> bool {
        self.entries.keys().all(|(tuple, y)| tuple.len() == self.s && key_is_valid(e, tuple, *y, self.t))
    }

    pub fn to_json(&self, e: &EWAlgebra) -> CochainJson {
        let mut entries = Vec::new();
        for (tuple, vals) in self.by_tuple() {
            entries.push(EntryJson {
                args: tuple.iter().map(|&x| e.label(x as usize).to_string()).collect(),
                value: vals.into_iter().map(|(y, c)| (e.label(y as usize).to_string(), c.clone())).collect(),
            });
        }
        CochainJson { arity: self.s, t: self.t, entries }
    }

    pub fn from_json(e: &EWAlgebra, j: &CochainJson) -> Result<Cochain> {
        let idx = |l: &str| -> Result<u8> {
            e.index_of(l).map(|i| i as u8).ok_or_else(|| Error::Parse(format!("unknown basis label '{l}'")))
        };
        let mut out = Cochain::zero(j.arity, j.t);
        for entry in &j.entries {
            let tuple: Tuple = entry.args.iter().map(|l| idx(l)).collect::<Result<_>>()?;
            if tuple.len() != j.arity {
                return Err(Error::Parse(format!("entry has {} args, arity is {}", tuple.len(), j.arity)));
            }
            for (l, c) in &entry.value {
                let y = idx(l)?;
                if !key_is_valid(e, &tuple, y, j.t) {
                    return Err(Error::Parse(format!(
                        "entry {:?} -> {l} violates the bidegree or composability",
                        entry.args
                    )));
                }
                out.add_term((tuple.clone(), y), c.clone());
            }
        }
        Ok(out)
    }
}

pub(crate) fn key_is_valid(e: &EWAlgebra, tuple: &[u8], y: u8, t: i32) -> bool {
    let y = y as usize;
    let composable = tuple.windows(2).all(|w| e.tgt(w[0] as usize) == e.src(w[1] as usize));
    let ends = match (tuple.first(), tuple.last()) {
        (Some(&a), Some(&b)) => e.src(a as usize) == e.src(y) && e.tgt(b as usize) == e.tgt(y),
        _ => e.src(y) == e.tgt(y),
    };
    let deg: i32 = tuple.iter().map(|&x| e.degree(x as usize)).sum();
    composable && ends && e.degree(y) - deg == t
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub args: Vec<String>,
    pub value: BTreeMap<String, Rat>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainJson {
    pub arity: usize,
    pub t: i32,
    pub entries: Vec<EntryJson>,
}

/// The suspended multiplication ms₂(x, y) = (−1)^{|x|} x·y on all basis
/// pairs, idempotents included.
pub fn ms2(e: &EWAlgebra) -> Cochain {
    let mut out = Cochain::zero(2, 0);
    for x in 0..e.dim() {
        for y in 0..e.dim() {
            let s = sign(e.degree(x));
            for (z, c) in e.mul(x, y) {
                out.add_term((vec![x as u8, y as u8], *z as u8), &s * c);
            }
        }
    }
    out
}

/// Brace insertion f∘g(x) = Σ_a (−1)^{‖g‖·Σ_{k≤a}‖x_k‖} f(x_1..x_a, g(…), …),
/// evaluated on radical arguments only.
pub fn brace(e: &EWAlgebra, f: &Cochain, g: &Cochain) -> Cochain {
    let mut out = Cochain::zero((f.s + g.s).saturating_sub(1), f.t + g.t);
    if f.s == 0 {
        return out;
    }
    let mut by_value: HashMap<u8, Vec<(&Tuple, &Rat)>> = HashMap::new();
    for ((tuple, y), c) in &g.entries {
        by_value.entry(*y).or_default().push((tuple, c));
    }
    let gdeg = g.sdeg();
    for ((tf, yf), cf) in &f.entries {
        let mut prefix = 0;
        for a in 0..tf.len() {
            if let Some(list) = by_value.get(&tf[a]) {
                let s = sign(gdeg * prefix);
                let scf = &s * cf;
                for (tg, cg) in list {
                    let mut tuple = Vec::with_capacity(tf.len() + tg.len() - 1);
                    tuple.extend_from_slice(&tf[..a]);
                    tuple.extend_from_slice(tg);
                    tuple.extend_from_slice(&tf[a + 1..]);
                    if tuple.iter().any(|&x| e.is_idempotent(x as usize)) {
                        continue;
                    }
                    out.add_term((tuple, *yf), &scf * cg);
                }
            }
            prefix += sdeg(e, tf[a]);
        }
    }
    out
}

/// [f, g] = f∘g − (−1)^{‖f‖‖g‖} g∘f.
pub fn gerstenhaber(e: &EWAlgebra, f: &Cochain, g: &Cochain) -> Cochain {
    let fg = brace(e, f, g);
    let gf = brace(e, g, f);
    let s = sign(f.sdeg() * g.sdeg());
    let mut out = fg;
    if out.is_zero() {
        out = Cochain::zero(gf.s, gf.t);
    }
    out.add_scaled(&gf, &-s);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_ew, SubspaceW};

    #[test]
    fn ms2_bracket_vanishes() {
        for w in [SubspaceW::zero(1), SubspaceW::full(2), SubspaceW::zero(2)] {
            let e = build_ew(&w);
            let m = ms2(&e);
            assert!(gerstenhaber(&e, &m, &m).is_zero());
        }
    }

    #[test]
    fn json_round_trip() {
        let e = build_ew(&SubspaceW::zero(1));
        let mut c = Cochain::zero(2, -1);
        let (a, b, l, eo) = (
            e.index_of("A1").unwrap() as u8,
            e.index_of("B1").unwrap() as u8,
            e.index_of("L1").unwrap() as u8,
            e.index_of("e_1").unwrap() as u8,
        );
        c.add_term((vec![a, b], eo), Rat::new(3, 2));
        assert!(c.is_well_formed(&e));
        let back = Cochain::from_json(&e, &c.to_json(&e)).unwrap();
        assert_eq!(back, c);
        let mut bad = crate::hochschild::cochain::CochainJson { arity: 2, t: -1, entries: vec![] };
        bad.entries.push(EntryJson {
            args: vec!["A1".into(), "B1".into()],
            value: [(e.label(l as usize).to_string(), Rat::one())].into_iter().collect(),
        });
        assert!(Cochain::from_json(&e, &bad).is_err());
    }
}
