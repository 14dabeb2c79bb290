use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{divides, mono_div, mono_lcm, Monomial, MultiPoly, Ring, Variable};
use crate::error::{Error, Result};
use crate::linalg::Rat;

/// Generators, relations read as rewrite rules `lead → −tail/lc`, and a
/// free-form description of the claimed basis.
#[derive(Clone, Debug)]
pub struct RelationSystem {
    ring: Arc<Ring>,
    relations: Vec<MultiPoly>,
    leads: Vec<(Monomial, Rat)>,
    pub claimed_basis: String,
}

impl RelationSystem {
    pub fn new(ring: Arc<Ring>, relations: Vec<MultiPoly>, claimed_basis: &str) -> Result<RelationSystem> {
        let mut kept = Vec::new();
        let mut leads = Vec::new();
        for r in relations {
            if !Arc::ptr_eq(r.ring(), &ring) && **r.ring() != *ring {
                return Err(Error::VariableMismatch);
            }
            let Some((m, c)) = r.lead() else { continue };
            leads.push((m.clone(), c.clone()));
            kept.push(r);
        }
        Ok(RelationSystem { ring, relations: kept, leads, claimed_basis: claimed_basis.to_string() })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    pub fn leads(&self) -> impl Iterator<Item = &Monomial> {
        self.leads.iter().map(|(m, _)| m)
    }

    /// Replace relation `i`, keeping the ring.
    pub fn with_relation(&self, i: usize, r: MultiPoly) -> Result<RelationSystem> {
        let mut rels = self.relations.clone();
        rels[i] = r;
        RelationSystem::new(self.ring.clone(), rels, &self.claimed_basis)
    }

    pub fn from_json(j: &RelationSystemJson) -> Result<RelationSystem> {
        let mut vars: Vec<Variable> =
            j.generators.iter().map(|g| Variable::generator(&g.name, g.degree, g.secondary)).collect();
        vars.extend(j.parameters.iter().map(|p| Variable::parameter(p)));
        let ring = Ring::new(vars)?;
        let relations = j.relations.iter().map(|s| MultiPoly::parse(&ring, s)).collect::<Result<Vec<_>>>()?;
        RelationSystem::new(ring, relations, &j.claimed_basis)
    }

    pub fn to_json(&self) -> RelationSystemJson {
        let vars = self.ring.vars();
        RelationSystemJson {
            generators: vars
                .iter()
                .filter(|v| !v.parameter)
                .map(|v| GeneratorSpec { name: v.name.clone(), degree: v.weight, secondary: v.secondary })
                .collect(),
            parameters: vars.iter().filter(|v| v.parameter).map(|v| v.name.clone()).collect(),
            relations: self.relations.iter().map(|r| r.to_string()).collect(),
            claimed_basis: self.claimed_basis.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
    #[serde(default)]
    pub secondary: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSystemJson {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub claimed_basis: String,
}

fn exceeded(bound: i64, degree: i64) -> Error {
    Error::BoundExceeded { bound, degree }
}

/// Fully reduces `p` by the rewrite rules.
pub fn normal_form(p: &MultiPoly, rs: &RelationSystem, degree_bound: i64) -> Result<MultiPoly> {
    let ring = rs.ring();
    let d = p.weighted_degree();
    if d > degree_bound {
        return Err(exceeded(degree_bound, d));
    }
    let mut work = p.clone();
    let mut rem = MultiPoly::zero(ring);
    while let Some((lm, lc)) = work.lead().map(|(m, c)| (m.clone(), c.clone())) {
        match rs.leads.iter().position(|(l, _)| divides(l, &lm)) {
            Some(i) => {
                let (l, c) = &rs.leads[i];
                let q = mono_div(&lm, l);
                work.add_scaled_shifted(&rs.relations[i], &-(&lc / c), &q);
                let d = ring.weighted_degree(&q) + ring.weighted_degree(l);
                if work.weighted_degree() > degree_bound {
                    return Err(exceeded(degree_bound, work.weighted_degree().max(d)));
                }
            }
            None => {
                work.add_term(lm.clone(), -&lc);
                rem.add_term(lm, lc);
            }
        }
    }
    Ok(rem)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.is_pass() { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFailure {
    pub left: usize,
    pub right: usize,
    pub left_relation: String,
    pub right_relation: String,
    pub remainder: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub verdict: Verdict,
    pub degree_bound: i64,
    pub pairs_reduced: usize,
    /// Pairs with coprime leading monomials (their S-polynomials reduce to 0).
    pub pairs_coprime: usize,
    /// Pairs whose lcm lies above the degree bound; not examined.
    pub pairs_beyond_bound: usize,
    pub failure: Option<PairFailure>,
}

enum PairOutcome {
    Coprime,
    Beyond,
    Zero,
    Remainder(MultiPoly),
}

fn s_polynomial(rs: &RelationSystem, i: usize, j: usize, lcm: &[u32]) -> MultiPoly {
    let (li, ci) = &rs.leads[i];
    let (lj, cj) = &rs.leads[j];
    let mut s = MultiPoly::zero(rs.ring());
    s.add_scaled_shifted(&rs.relations[i], &ci.recip(), &mono_div(lcm, li));
    s.add_scaled_shifted(&rs.relations[j], &-cj.recip(), &mono_div(lcm, lj));
    s
}

/// Checks that every S-polynomial within the degree window reduces to 0.
pub fn closure_check(rs: &RelationSystem, degree_bound: i64) -> Result<ClosureReport> {
    let ring = rs.ring();
    let k = rs.relations.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let outcomes: Vec<Result<PairOutcome>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (li, lj) = (&rs.leads[i].0, &rs.leads[j].0);
            if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
                return Ok(PairOutcome::Coprime);
            }
            let lcm = mono_lcm(li, lj);
            if ring.weighted_degree(&lcm) > degree_bound {
                return Ok(PairOutcome::Beyond);
            }
            let r = normal_form(&s_polynomial(rs, i, j, &lcm), rs, degree_bound)?;
            Ok(if r.is_zero() { PairOutcome::Zero } else { PairOutcome::Remainder(r) })
        })
        .collect();
    let mut report = ClosureReport {
        verdict: Verdict::Pass,
        degree_bound,
        pairs_reduced: 0,
        pairs_coprime: 0,
        pairs_beyond_bound: 0,
        failure: None,
    };
    for (&(i, j), out) in pairs.iter().zip(outcomes) {
        match out? {
            PairOutcome::Coprime => report.pairs_coprime += 1,
            PairOutcome::Beyond => report.pairs_beyond_bound += 1,
            PairOutcome::Zero => report.pairs_reduced += 1,
            PairOutcome::Remainder(r) => {
                report.pairs_reduced += 1;
                if report.failure.is_none() {
                    report.verdict = Verdict::Fail;
                    report.failure = Some(PairFailure {
                        left: i,
                        right: j,
                        left_relation: rs.relations[i].to_string(),
                        right_relation: rs.relations[j].to_string(),
                        remainder: r.to_string(),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Monomials in the generators of weighted degree ≤ d that no
/// parameter-free leading monomial divides, in increasing order.
pub fn standard_monomials(rs: &RelationSystem, d: i64) -> Vec<Monomial> {
    let ring = rs.ring();
    let gens: Vec<usize> = (0..ring.nvars()).filter(|&i| !ring.vars()[i].parameter).collect();
    let leads: Vec<&Monomial> = rs.leads().filter(|l| ring.is_parameter_free(l)).collect();
    let mut out = Vec::new();
    let mut cur = ring.one();
    fn rec(
        ring: &Ring,
        gens: &[usize],
        leads: &[&Monomial],
        k: usize,
        left: i64,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if k == gens.len() {
            if !leads.iter().any(|l| divides(l, cur)) {
                out.push(cur.clone());
            }
            return;
        }
        let v = gens[k];
        let w = ring.vars()[v].weight;
        let mut e = 0;
        while e as i64 * w <= left {
            cur[v] = e;
            rec(ring, gens, leads, k + 1, left - e as i64 * w, cur, out);
            e += 1;
        }
        cur[v] = 0;
    }
    rec(ring, &gens, &leads, 0, d, &mut cur, &mut out);
    out.sort_by(|a, b| ring.cmp(a, b));
    out
}

/// Number of standard monomials of weighted degree ≤ d.
pub fn basis_count(rs: &RelationSystem, d: i64) -> usize {
    standard_monomials(rs, d).len()
}
