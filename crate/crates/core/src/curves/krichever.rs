use serde::{Deserialize, Serialize};

use super::{rho, special_curve_algebra, BranchPoly, SpecialCurveData};
use crate::error::{Error, Result};
use crate::linalg::{sparse, Echelon, SparseVec};
use crate::poly::{LaurentVector, Verdict};

/// Laurent expansions (t_i = 1/x_i) of a spanning set of the functions with
/// pole order ≤ D, on the window [−D, D].
#[derive(Clone, Debug)]
pub struct KricheverWindow {
    pub branches: usize,
    pub depth: usize,
    pub subspace: Vec<LaurentVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KricheverReport {
    pub branches: usize,
    pub depth: usize,
    /// dim of the window span.
    pub dim: usize,
    /// codim of W + H_{≥0} among polar parts of order ≤ D.
    pub codim: usize,
    pub expected_genus: Option<usize>,
    /// W ∩ H_{≥0} is exactly the constants.
    pub intersection_dim: usize,
    pub contains_one: bool,
    pub verdict_a: bool,
    pub verdict_b: bool,
    /// W + ⊕ t_i^{−1} k[[t_i]] fills the window.
    pub verdict_c: bool,
    pub verdict: Verdict,
}

impl KricheverWindow {
    fn from_branch_polys(branches: usize, depth: usize, elements: &[BranchPoly]) -> Result<KricheverWindow> {
        let d = depth as i64;
        let mut subspace = Vec::with_capacity(elements.len());
        for p in elements {
            let mut v = LaurentVector::zero(branches, -d, d);
            for (b, coeffs) in p.iter().enumerate() {
                for (k, c) in coeffs.iter().enumerate() {
                    if k > depth {
                        return Err(Error::WindowUnderflow(format!("pole of order {k} beyond depth {depth}")));
                    }
                    v.set(b, -(k as i64), c.clone())?;
                }
            }
            subspace.push(v);
        }
        Ok(KricheverWindow { branches, depth, subspace })
    }

    /// Coefficients on t^{−depth}..t^{−lo} of every branch.
    fn polar_rows(&self, lo: usize) -> Vec<SparseVec> {
        let d = self.depth as i64;
        self.subspace
            .iter()
            .map(|v| sparse::from_dense(&v.window_vector(-d, -(lo as i64)).expect("within window")))
            .collect()
    }

    pub fn report(&self, expected_genus: Option<usize>) -> KricheverReport {
        let (n, d) = (self.branches, self.depth);
        let full: Vec<SparseVec> = self
            .subspace
            .iter()
            .map(|v| sparse::from_dense(&v.window_vector(-(d as i64), 0).expect("within window")))
            .collect();
        let cols = n * (d + 1);
        let ech = Echelon::from_rows(cols, full.iter().cloned());
        let dim = ech.rank();
        let polar = sparse::rank(n * d, self.polar_rows(1));
        let fill = if d >= 2 { sparse::rank(n * (d - 1), self.polar_rows(2)) } else { 0 };
        let one = LaurentVector::one(n, -(d as i64), d as i64);
        let one_vec = sparse::from_dense(&one.window_vector(-(d as i64), 0).expect("within window"));
        let contains_one = ech.reduce(one_vec).is_empty();
        let intersection_dim = dim - polar;
        let codim = n * d - polar;
        let verdict_a = intersection_dim == 1 && contains_one;
        let verdict_b = expected_genus.is_none_or(|g| g == codim);
        let verdict_c = fill == n * d.saturating_sub(1);
        KricheverReport {
            branches: n,
            depth: d,
            dim,
            codim,
            expected_genus,
            intersection_dim,
            contains_one,
            verdict_a,
            verdict_b,
            verdict_c,
            verdict: Verdict::from_bool(verdict_a && verdict_b && verdict_c),
        }
    }
}

/// Window and verdicts for an arbitrary spanning set of F_D.
pub fn krichever_model(
    branches: usize,
    depth: usize,
    elements: &[BranchPoly],
    expected_genus: Option<usize>,
) -> Result<(KricheverWindow, KricheverReport)> {
    let w = KricheverWindow::from_branch_polys(branches, depth, elements)?;
    let r = w.report(expected_genus);
    Ok((w, r))
}

/// Smallest depth at which the window is trusted.
pub fn adequate_depth(genus: usize) -> usize {
    2 * genus + 4
}

pub fn krichever_window(d: &SpecialCurveData, depth: usize) -> Result<(KricheverWindow, KricheverReport)> {
    let g = d.genus();
    if depth < adequate_depth(g) {
        return Err(Error::WindowUnderflow(format!(
            "depth {depth} is below the adequacy bound 2g+4 = {}",
            adequate_depth(g)
        )));
    }
    let pres = special_curve_algebra(d)?;
    let emb = rho(&pres);
    let elements: Vec<BranchPoly> =
        pres.claimed_basis(depth as i64).iter().map(|m| emb.apply_monomial(pres.ring(), m)).collect();
    krichever_model(d.n, depth, &elements, Some(g))
}

/// Reports at D and D+2 agree in codimension and verdicts.
pub fn krichever_stable(d: &SpecialCurveData, depth: usize) -> Result<bool> {
    let (_, a) = krichever_window(d, depth)?;
    let (_, b) = krichever_window(d, depth + 2)?;
    Ok(a.codim == b.codim
        && a.intersection_dim == b.intersection_dim
        && (a.verdict_a, a.verdict_b, a.verdict_c) == (b.verdict_a, b.verdict_b, b.verdict_c))
}
