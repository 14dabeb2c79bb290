use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Rat;

/// An element of ⊕ k((t_i)) known exactly for exponents ≤ `high`; there are
/// no terms below `low`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentVector {
    branches: usize,
    low: i64,
    high: i64,
    coeffs: BTreeMap<(usize, i64), Rat>,
}

impl LaurentVector {
    pub fn zero(branches: usize, low: i64, high: i64) -> LaurentVector {
        LaurentVector { branches, low, high, coeffs: BTreeMap::new() }
    }

    /// c·t_b^e on the window [low, high].
    pub fn monomial(branches: usize, b: usize, e: i64, c: Rat, low: i64, high: i64) -> Result<LaurentVector> {
        let mut v = LaurentVector::zero(branches, low, high);
        v.set(b, e, c)?;
        Ok(v)
    }

    /// The constant 1 on every branch.
    pub fn one(branches: usize, low: i64, high: i64) -> LaurentVector {
        let mut v = LaurentVector::zero(branches, low.min(0), high);
        for b in 0..branches {
            v.coeffs.insert((b, 0), Rat::one());
        }
        v
    }

    pub fn branches(&self) -> usize {
        self.branches
    }

    pub fn window(&self) -> (i64, i64) {
        (self.low, self.high)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64, &Rat)> {
        self.coeffs.iter().map(|(&(b, e), c)| (b, e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn set(&mut self, b: usize, e: i64, c: Rat) -> Result<()> {
        if b >= self.branches {
            return Err(Error::Dimension(format!("branch {b} out of range")));
        }
        if e < self.low || e > self.high {
            return Err(Error::WindowUnderflow(format!("exponent {e} outside [{}, {}]", self.low, self.high)));
        }
        if c.is_zero() {
            self.coeffs.remove(&(b, e));
        } else {
            self.coeffs.insert((b, e), c);
        }
        Ok(())
    }

    pub fn coeff(&self, b: usize, e: i64) -> Result<Rat> {
        if e > self.high {
            return Err(Error::WindowUnderflow(format!(
                "coefficient of t^{e} on branch {b} is not trusted (window ends at {})",
                self.high
            )));
        }
        Ok(self.coeffs.get(&(b, e)).cloned().unwrap_or_default())
    }

    /// Lowest exponent with a nonzero coefficient on branch b, or high + 1.
    pub fn valuation(&self, b: usize) -> i64 {
        self.coeffs.range((b, i64::MIN)..=(b, i64::MAX)).next().map(|(&(_, e), _)| e).unwrap_or(self.high + 1)
    }

    fn check(&self, other: &LaurentVector) -> Result<()> {
        if self.branches != other.branches {
            return Err(Error::Dimension(format!("{} vs {} branches", self.branches, other.branches)));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentVector) -> Result<LaurentVector> {
        self.check(other)?;
        let mut out = LaurentVector::zero(self.branches, self.low.min(other.low), self.high.min(other.high));
        for src in [self, other] {
            for (&(b, e), c) in &src.coeffs {
                if e <= out.high {
                    let cur = out.coeffs.entry((b, e)).or_default();
                    *cur += c;
                }
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> LaurentVector {
        let mut out = LaurentVector::zero(self.branches, self.low, self.high);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect();
        }
        out
    }

    pub fn sub(&self, other: &LaurentVector) -> Result<LaurentVector> {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Branchwise product. The result is trusted up to
    /// min_b min(h₁ + val_b(v), h₂ + val_b(u)).
    pub fn mul(&self, other: &LaurentVector) -> Result<LaurentVector> {
        self.check(other)?;
        let high = (0..self.branches)
            .map(|b| (self.high + other.valuation(b)).min(other.high + self.valuation(b)))
            .min()
            .unwrap_or(self.high + other.high + 1);
        let low = self.low + other.low;
        let mut out = LaurentVector::zero(self.branches, low, high.max(low - 1));
        for (&(b, e1), c1) in &self.coeffs {
            for (&(_, e2), c2) in other.coeffs.range((b, i64::MIN)..=(b, i64::MAX)) {
                let e = e1 + e2;
                if e <= out.high {
                    out.coeffs.entry((b, e)).or_default().add_mul(c1, c2);
                }
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Restrict to [lo, hi]. The flag reports whether nonzero trusted terms
    /// were dropped.
    pub fn truncate(&self, lo: i64, hi: i64) -> (LaurentVector, bool) {
        let high = hi.min(self.high);
        let mut out = LaurentVector::zero(self.branches, lo, high);
        let mut dropped = false;
        for (&(b, e), c) in &self.coeffs {
            if e >= lo && e <= high {
                out.coeffs.insert((b, e), c.clone());
            } else {
                dropped = true;
            }
        }
        (out, dropped)
    }

    /// Coefficients on exponents lo..=hi, branch-major.
    pub fn window_vector(&self, lo: i64, hi: i64) -> Result<Vec<Rat>> {
        if hi > self.high {
            return Err(Error::WindowUnderflow(format!("requested up to t^{hi}, trusted up to t^{}", self.high)));
        }
        let width = (hi - lo + 1).max(0) as usize;
        let mut out = vec![Rat::zero(); width * self.branches];
        for (&(b, e), c) in &self.coeffs {
            if e >= lo && e <= hi {
                out[b * width + (e - lo) as usize] = c.clone();
            }
        }
        Ok(out)
    }
}
