use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::krichever::{adequate_depth, krichever_model};
use super::{branch_add_scaled, rho, special_curve_algebra, BranchPoly, KricheverReport, SpecialCurveData};
use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::poly::Verdict;

/// A finite point x on branch `branch` (1-based) of a polynomial model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluePoint {
    pub branch: usize,
    pub x: Rat,
}

impl FromStr for GluePoint {
    type Err = Error;

    /// "branch:x", e.g. "1:0" or "2:-3/2".
    fn from_str(s: &str) -> Result<GluePoint> {
        let (b, x) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected branch:x, got '{s}'")))?;
        let x = x.trim();
        if matches!(x.to_ascii_lowercase().as_str(), "inf" | "infinity" | "oo") {
            return Err(Error::Invalid("q at x = infinity is a marked point".into()));
        }
        let branch = b.trim().parse().map_err(|_| Error::Parse(format!("bad branch '{b}'")))?;
        let x = x.parse().map_err(|_| Error::Parse(format!("bad x value '{x}'")))?;
        Ok(GluePoint { branch, x })
    }
}

/// A curve given by polynomial branch models: a special curve, or two
/// models glued transversally at one finite point each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveModel {
    Special(SpecialCurveData),
    Glued { left: Box<CurveModel>, q_left: GluePoint, right: Box<CurveModel>, q_right: GluePoint },
}

impl CurveModel {
    pub fn branches(&self) -> usize {
        match self {
            CurveModel::Special(d) => d.n,
            CurveModel::Glued { left, right, .. } => left.branches() + right.branches(),
        }
    }

    /// |S| summed over the special pieces.
    pub fn nominal_genus(&self) -> usize {
        match self {
            CurveModel::Special(d) => d.genus(),
            CurveModel::Glued { left, right, .. } => left.nominal_genus() + right.nominal_genus(),
        }
    }

    /// A spanning set of the functions with pole order ≤ D.
    pub fn filtration(&self, depth: usize) -> Result<Vec<BranchPoly>> {
        match self {
            CurveModel::Special(d) => {
                let pres = special_curve_algebra(d)?;
                let emb = rho(&pres);
                Ok(pres.claimed_basis(depth as i64).iter().map(|m| emb.apply_monomial(pres.ring(), m)).collect())
            }
            CurveModel::Glued { left, q_left, right, q_right } => {
                let (nl, nr) = (left.branches(), right.branches());
                check_point(q_left, nl)?;
                check_point(q_right, nr)?;
                let mut elems: Vec<(BranchPoly, Rat)> = Vec::new();
                for f in left.filtration(depth)? {
                    let v = eval(&f, q_left);
                    let mut p = f;
                    p.extend(std::iter::repeat_n(Vec::new(), nr));
                    elems.push((p, v));
                }
                for g in right.filtration(depth)? {
                    let v = -eval(&g, q_right);
                    let mut p: BranchPoly = vec![Vec::new(); nl];
                    p.extend(g);
                    elems.push((p, v));
                }
                // Kernel of (f, g) ↦ f(q_left) − g(q_right).
                let Some(piv) = elems.iter().position(|(_, v)| !v.is_zero()) else {
                    return Ok(elems.into_iter().map(|(p, _)| p).collect());
                };
                let (pp, pv) = elems[piv].clone();
                Ok(elems
                    .into_iter()
                    .enumerate()
                    .filter(|(k, _)| *k != piv)
                    .map(|(_, (mut p, v))| {
                        if !v.is_zero() {
                            branch_add_scaled(&mut p, &pp, &-(&v / &pv));
                        }
                        p
                    })
                    .collect())
            }
        }
    }

    pub fn krichever(&self, depth: usize) -> Result<KricheverReport> {
        let elems = self.filtration(depth)?;
        Ok(krichever_model(self.branches(), depth, &elems, None)?.1)
    }
}

fn check_point(q: &GluePoint, branches: usize) -> Result<()> {
    if q.branch == 0 || q.branch > branches {
        return Err(Error::Invalid(format!("branch {} out of range 1..{branches}", q.branch)));
    }
    Ok(())
}

fn eval(p: &BranchPoly, q: &GluePoint) -> Rat {
    let mut acc = Rat::zero();
    for c in p[q.branch - 1].iter().rev() {
        acc = &(&acc * &q.x) + c;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueReport {
    pub branches: usize,
    pub depth: usize,
    pub genus_left: usize,
    pub genus_right: usize,
    pub genus: usize,
    pub additive: bool,
    pub window: KricheverReport,
    pub verdict: Verdict,
}

/// Glue `left` at q_left to `right` at q_right; genera come from Krichever
/// windows at a common depth.
pub fn glue(
    left: &CurveModel,
    q_left: &GluePoint,
    right: &CurveModel,
    q_right: &GluePoint,
    depth: Option<usize>,
) -> Result<(CurveModel, GlueReport)> {
    check_point(q_left, left.branches())?;
    check_point(q_right, right.branches())?;
    let glued = CurveModel::Glued {
        left: Box::new(left.clone()),
        q_left: q_left.clone(),
        right: Box::new(right.clone()),
        q_right: q_right.clone(),
    };
    let depth = depth.unwrap_or_else(|| adequate_depth(glued.nominal_genus()).max(8));
    let gl = left.krichever(depth)?.codim;
    let gr = right.krichever(depth)?.codim;
    let window = glued.krichever(depth)?;
    let additive = window.codim == gl + gr;
    let verdict = Verdict::from_bool(
        additive && window.verdict_a && window.verdict_c && window.branches == left.branches() + right.branches(),
    );
    let report = GlueReport {
        branches: glued.branches(),
        depth,
        genus_left: gl,
        genus_right: gr,
        genus: window.codim,
        additive,
        window,
        verdict,
    };
    Ok((glued, report))
}
