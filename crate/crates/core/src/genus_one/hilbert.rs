use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::poly::Verdict;

/// Characters λ₀^u λ₁^v, graded pieces n = 0..=n_max.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSpec {
    pub u: Rat,
    pub v: Rat,
    pub n_max: usize,
}

impl HilbertSpec {
    pub fn new(u: Rat, v: Rat, n_max: usize) -> HilbertSpec {
        HilbertSpec { u, v, n_max }
    }

    /// Smallest n > 0 with nu and nv integral.
    pub fn period(&self) -> usize {
        (1..).find(|&n| admissible(&self.u, &self.v, n)).expect("rationals have finite denominators")
    }

    pub fn regime(&self) -> Regime {
        let s = &self.u + &self.v;
        if self.u.is_negative() || self.v.is_negative() || s < Rat::one() {
            Regime::Constants
        } else if s.is_one() {
            Regime::OneVariable { degree: self.period() }
        } else {
            let n0 = self.period();
            let step = (&Rat::from_int(n0 as i64) * &(&s - &Rat::one())).to_i64().expect("integral") as usize;
            Regime::Veronese { n0, step }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regime {
    /// Only the constants: u < 0, v < 0 or u + v < 1.
    Constants,
    /// u + v = 1: a polynomial ring in one variable of this degree.
    OneVariable { degree: usize },
    /// u + v > 1: A_{k·n0} is the degree k·step piece of k[x,y,z], weights (2,3,4).
    Veronese { n0: usize, step: usize },
}

fn admissible(u: &Rat, v: &Rat, n: usize) -> bool {
    let n = Rat::from_int(n as i64);
    (&n * u).is_integer() && (&n * v).is_integer()
}

/// #{(k,l,m) ≥ 0 : 2k + 3l + 4m = d}.
fn lattice_count(d: i64) -> u64 {
    let mut count = 0;
    let mut m = 0;
    while 4 * m <= d {
        let mut l = 0;
        while 4 * m + 3 * l <= d {
            if (d - 4 * m - 3 * l) % 2 == 0 {
                count += 1;
            }
            l += 1;
        }
        m += 1;
    }
    count
}

/// dim A(u,v)_n: monomials t₁^{nu} t₂^{nv} x^k y^l z^m with nonnegative
/// integral exponents and n(u+v−1) = 2k + 3l + 4m.
pub fn hilbert_a(spec: &HilbertSpec) -> Vec<u64> {
    let s1 = &(&spec.u + &spec.v) - &Rat::one();
    (0..=spec.n_max)
        .map(|n| {
            if !admissible(&spec.u, &spec.v, n) {
                return 0;
            }
            let nr = Rat::from_int(n as i64);
            if (&nr * &spec.u).is_negative() || (&nr * &spec.v).is_negative() {
                return 0;
            }
            let d = &nr * &s1;
            match d.to_i64() {
                Some(d) if d >= 0 => lattice_count(d),
                _ => 0,
            }
        })
        .collect()
}

/// Coefficients of 1/((1−q²)(1−q³)(1−q⁴)) up to q^d.
pub fn veronese_count(d: usize) -> Vec<u64> {
    let mut c = vec![0u64; d + 1];
    c[0] = 1;
    for w in [2, 3, 4] {
        for i in w..=d {
            c[i] += c[i - w];
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertComparison {
    pub spec: HilbertSpec,
    pub regime: Regime,
    pub hilbert: Vec<u64>,
    pub veronese: Vec<u64>,
    pub mismatches: Vec<usize>,
    pub verdict: Verdict,
}

/// Compare A(u,v)_n with the Veronese pieces of the weight (2,3,4) ring.
pub fn weighted_proj_compare(spec: &HilbertSpec) -> Result<HilbertComparison> {
    let regime = spec.regime();
    let (n0, step) = match regime {
        Regime::Veronese { n0, step } => (n0, step),
        Regime::Constants => {
            return Err(Error::Invalid(format!(
                "(u, v) = ({}, {}): A(u,v) is only the constants, the quotient is empty",
                spec.u, spec.v
            )))
        }
        Regime::OneVariable { degree } => {
            return Err(Error::Invalid(format!(
                "(u, v) = ({}, {}): u + v = 1, A(u,v) is a polynomial ring in one variable of degree {degree} and the quotient reduces to a point",
                spec.u, spec.v
            )))
        }
    };
    let hilbert = hilbert_a(spec);
    let table = veronese_count((spec.n_max / n0) * step);
    let veronese: Vec<u64> = (0..=spec.n_max).map(|n| if n % n0 == 0 { table[(n / n0) * step] } else { 0 }).collect();
    let mismatches: Vec<usize> = (0..=spec.n_max).filter(|&n| hilbert[n] != veronese[n]).collect();
    let verdict = Verdict::from_bool(mismatches.is_empty());
    Ok(HilbertComparison { spec: spec.clone(), regime, hilbert, veronese, mismatches, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(u: Rat, v: Rat, n: usize) -> HilbertSpec {
        HilbertSpec::new(u, v, n)
    }

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn unit_weights() {
        assert_eq!(hilbert_a(&spec(q(1), q(1), 7)), vec![1, 0, 1, 1, 2, 1, 3, 2]);
    }

    #[test]
    fn degenerate() {
        assert_eq!(hilbert_a(&spec(q(-1), q(3), 5)), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(hilbert_a(&spec(Rat::new(1, 3), Rat::new(1, 3), 4)), vec![1, 0, 0, 0, 0]);
        let half = Rat::new(1, 2);
        assert_eq!(hilbert_a(&spec(half.clone(), half.clone(), 6)), vec![1, 0, 1, 0, 1, 0, 1]);
        assert!(weighted_proj_compare(&spec(half.clone(), half, 10)).is_err());
        assert!(weighted_proj_compare(&spec(q(-1), q(3), 10)).is_err());
    }

    #[test]
    fn veronese_agrees() {
        for (u, v) in [(q(1), q(1)), (q(2), q(1)), (Rat::new(3, 2), Rat::new(3, 2)), (Rat::new(2, 3), Rat::new(5, 6))] {
            let r = weighted_proj_compare(&spec(u, v, 40)).unwrap();
            assert!(r.verdict.is_pass(), "{r:?}");
        }
    }

    #[test]
    fn swap_symmetric() {
        let a = hilbert_a(&spec(Rat::new(5, 2), q(1), 30));
        let b = hilbert_a(&spec(q(1), Rat::new(5, 2), 30));
        assert_eq!(a, b);
    }
}
