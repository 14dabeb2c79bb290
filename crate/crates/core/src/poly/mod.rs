//! Sparse commutative polynomials over the rationals with weighted gradings,
//! bounded-degree rewriting and truncated Laurent vectors.

mod laurent;
mod parse;
mod relations;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rat;

pub use laurent::LaurentVector;
pub use parse::parse_poly;
pub use relations::{
    basis_count, closure_check, normal_form, standard_monomials, ClosureReport, GeneratorSpec, PairFailure,
    RelationSystem, RelationSystemJson, Verdict,
};

/// Exponent vector, one entry per ring variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    /// Weighted degree; 0 for parameters.
    pub weight: i64,
    /// Tie-break weight applied after the weighted degree.
    #[serde(default)]
    pub secondary: i64,
    #[serde(default)]
    pub parameter: bool,
}

impl Variable {
    pub fn generator(name: &str, weight: i64, secondary: i64) -> Variable {
        Variable { name: name.to_string(), weight, secondary, parameter: false }
    }

    pub fn parameter(name: &str) -> Variable {
        Variable { name: name.to_string(), weight: 0, secondary: 0, parameter: true }
    }
}

/// An ordered list of variables together with the monomial order.
///
/// Monomials compare by weighted degree, then secondary weight, then total
/// degree in the parameters, then lexicographically with earlier variables
/// larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Variable>,
    index: BTreeMap<String, usize>,
}

impl Ring {
    pub fn new(vars: Vec<Variable>) -> Result<Arc<Ring>> {
        let mut index = BTreeMap::new();
        for (i, v) in vars.iter().enumerate() {
            if v.name.is_empty() || !v.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("bad variable name '{}'", v.name)));
            }
            if v.name.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(Error::Parse(format!("variable name '{}' starts with a digit", v.name)));
            }
            if !v.parameter && v.weight <= 0 {
                return Err(Error::Invalid(format!("generator '{}' needs a positive weight", v.name)));
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate variable '{}'", v.name)));
            }
        }
        Ok(Arc::new(Ring { vars, index }))
    }

    /// Plain polynomial ring with the given weights.
    pub fn weighted(names: &[&str], weights: &[i64]) -> Arc<Ring> {
        let vars = names.iter().zip(weights).map(|(n, &w)| Variable::generator(n, w, 0)).collect();
        Ring::new(vars).expect("valid names")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn one(&self) -> Monomial {
        vec![0; self.vars.len()]
    }

    pub fn weighted_degree(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.vars).map(|(&e, v)| e as i64 * v.weight).sum()
    }

    fn secondary_degree(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.vars).map(|(&e, v)| e as i64 * v.secondary).sum()
    }

    fn parameter_degree(&self, m: &[u32]) -> i64 {
        m.iter().zip(&self.vars).filter(|(_, v)| v.parameter).map(|(&e, _)| e as i64).sum()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.weighted_degree(a)
            .cmp(&self.weighted_degree(b))
            .then_with(|| self.secondary_degree(a).cmp(&self.secondary_degree(b)))
            .then_with(|| self.parameter_degree(a).cmp(&self.parameter_degree(b)))
            .then_with(|| a.cmp(b))
    }

    /// True if the monomial involves only generators.
    pub fn is_parameter_free(&self, m: &[u32]) -> bool {
        m.iter().zip(&self.vars).all(|(&e, v)| e == 0 || !v.parameter)
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.name(i).to_string() } else { format!("{}^{e}", self.name(i)) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &MultiPoly) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> MultiPoly {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rat) -> MultiPoly {
        MultiPoly::term(ring, ring.one(), c)
    }

    pub fn one(ring: &Arc<Ring>) -> MultiPoly {
        MultiPoly::constant(ring, Rat::one())
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Rat) -> MultiPoly {
        assert_eq!(m.len(), ring.nvars(), "exponent vector length");
        let mut p = MultiPoly::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<MultiPoly> {
        let i = ring.var_index(name).ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
        let mut m = ring.one();
        m[i] = 1;
        Ok(MultiPoly::term(ring, m, Rat::one()))
    }

    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<MultiPoly> {
        parse_poly(ring, s)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = MultiPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(&self.ring);
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// self + c·m·other, in place.
    pub fn add_scaled_shifted(&mut self, other: &MultiPoly, c: &Rat, m: &[u32]) {
        for (m2, c2) in &other.terms {
            self.add_term(mono_mul(m, m2), c * c2);
        }
    }

    /// Leading monomial and coefficient under the ring order.
    pub fn lead(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| self.ring.cmp(a.0, b.0))
    }

    /// Maximum weighted degree of a term (−1 for zero).
    pub fn weighted_degree(&self) -> i64 {
        self.terms.keys().map(|m| self.ring.weighted_degree(m)).max().unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| self.ring.weighted_degree(m));
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Substitute polynomials (in another ring) for every variable.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::VariableMismatch);
        }
        let target = images.first().map(|p| p.ring.clone()).ok_or(Error::VariableMismatch)?;
        let mut out = MultiPoly::zero(&target);
        let mut cache: BTreeMap<(usize, u32), MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                t = t.mul(&p)?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Terms sorted from largest to smallest under the ring order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.cmp(b.0, a.0));
        v
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = self.ring.format_monomial(m);
            match (a.is_one(), mono.as_str()) {
                (_, "1") => write!(f, "{a}")?,
                (true, _) => write!(f, "{mono}")?,
                (false, _) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Ring> {
        Ring::weighted(&["x", "y"], &[1, 1])
    }

    #[test]
    fn times_one() {
        let r = xy();
        let p = MultiPoly::parse(&r, "3*x^2 - y/2 + 1").unwrap();
        assert_eq!(p.mul(&MultiPoly::one(&r)).unwrap(), p);
    }

    #[test]
    fn difference_of_squares() {
        let r = xy();
        let a = MultiPoly::parse(&r, "x + y").unwrap();
        let b = MultiPoly::parse(&r, "x - y").unwrap();
        assert_eq!(a.mul(&b).unwrap(), MultiPoly::parse(&r, "x^2 - y^2").unwrap());
    }

    #[test]
    fn weighted_degree_adds() {
        let r = Ring::weighted(&["f1", "h1"], &[2, 3]);
        assert_eq!(MultiPoly::parse(&r, "f1*h1").unwrap().weighted_degree(), 5);
    }

    #[test]
    fn mismatch_rejected() {
        let p = MultiPoly::one(&xy());
        let q = MultiPoly::one(&Ring::weighted(&["u"], &[1]));
        assert_eq!(p.add(&q), Err(Error::VariableMismatch));
    }

    #[test]
    fn display_is_parseable() {
        let r = xy();
        let p = MultiPoly::parse(&r, "-x^3*y + 2/3*x - 5").unwrap();
        assert_eq!(p.to_string(), "-x^3*y + 2/3*x - 5");
        assert_eq!(MultiPoly::parse(&r, &p.to_string()).unwrap(), p);
    }
}
