//! The graded algebra E_W = k[Q_n]/J_W.
//!
//! Vertices are `O = 0` and `p_i = i`. Arrows `A_i: p_i → O` (degree 0) and
//! `B_i: O → p_i` (degree 1); paths compose left to right, so `A_i·B_i` is the
//! loop at `p_i` and `B_i·A_i` the loop at `O`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sparse, ExactMatrix, Rat, SparseVec};

/// A point of G(n−g, n): the row span of a full-rank (n−g)×n matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubspaceW {
    n: usize,
    g: usize,
    rows: ExactMatrix,
}

impl SubspaceW {
    pub fn new(n: usize, g: usize, rows: ExactMatrix) -> Result<SubspaceW> {
        if n == 0 || g > n {
            return Err(Error::Invalid(format!("need 0 <= g <= n and n >= 1, got n={n}, g={g}")));
        }
        if rows.ncols() != n && rows.nrows() > 0 {
            return Err(Error::Dimension(format!("W rows must have length {n}")));
        }
        let rows = if rows.nrows() == 0 { ExactMatrix::zero(0, n) } else { rows };
        let rank = rows.rank();
        if rows.nrows() != n - g || rank != n - g {
            return Err(Error::RankDeficient { expected: n - g, found: rank });
        }
        Ok(SubspaceW { n, g, rows })
    }

    /// The zero subspace of k^n (g = n).
    pub fn zero(n: usize) -> SubspaceW {
        SubspaceW { n, g: n, rows: ExactMatrix::zero(0, n) }
    }

    /// All of k^n (g = 0).
    pub fn full(n: usize) -> SubspaceW {
        SubspaceW { n, g: 0, rows: ExactMatrix::identity(n) }
    }

    pub fn from_rows(n: usize, rows: &[Vec<Rat>]) -> Result<SubspaceW> {
        let m = ExactMatrix::from_dense_with_cols(rows, n);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("W rows must have length {n}")));
        }
        SubspaceW::new(n, n - rows.len().min(n), m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn rows(&self) -> &ExactMatrix {
        &self.rows
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        self.rows.rref()
    }

    pub fn same_as(&self, other: &SubspaceW) -> bool {
        self.n == other.n && self.g == other.g && self.rref().0 == other.rref().0
    }

    /// λ·W = {(λ_1 x_1, …, λ_n x_n) : x ∈ W}.
    pub fn rescale(&self, lambda: &[Rat]) -> Result<SubspaceW> {
        check_lambda(self.n, lambda)?;
        let rows: Vec<Vec<Rat>> =
            self.rows.to_dense().into_iter().map(|r| r.iter().zip(lambda).map(|(x, l)| x * l).collect()).collect();
        SubspaceW::new(self.n, self.g, ExactMatrix::from_dense_with_cols(&rows, self.n))
    }
}

fn check_lambda(n: usize, lambda: &[Rat]) -> Result<()> {
    if lambda.len() != n {
        return Err(Error::Dimension(format!("lambda must have {n} entries")));
    }
    if lambda.iter().any(|l| l.is_zero()) {
        return Err(Error::Invalid("rescaling factors must be nonzero".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    Idempotent(usize),
    A(usize),
    B(usize),
    /// ℓ_i = A_i B_i at p_i.
    Loop(usize),
    /// B_j A_j at O for a non-pivot column j of rref(W).
    Coset(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub kind: BasisKind,
    pub src: usize,
    pub tgt: usize,
    pub degree: i32,
}

impl BasisElement {
    pub fn is_idempotent(&self) -> bool {
        matches!(self.kind, BasisKind::Idempotent(_))
    }
}

#[derive(Clone, Debug)]
pub struct EWAlgebra {
    w: SubspaceW,
    basis: Vec<BasisElement>,
    table: Vec<Vec<SparseVec>>,
    by_label: BTreeMap<String, usize>,
}

/// Builds E_W from a valid W.
pub fn build_ew(w: &SubspaceW) -> EWAlgebra {
    let n = w.n;
    let (r, pivots) = w.rref();
    let nonpivots: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();

    let mut basis = Vec::new();
    let mut push = |label: String, kind, src, tgt, degree| {
        basis.push(BasisElement { label, kind, src, tgt, degree });
        basis.len() - 1
    };
    for v in 0..=n {
        let label = if v == 0 { "e_O".to_string() } else { format!("e_{v}") };
        push(label, BasisKind::Idempotent(v), v, v, 0);
    }
    for i in 1..=n {
        push(format!("A{i}"), BasisKind::A(i), i, 0, 0);
    }
    for i in 1..=n {
        push(format!("B{i}"), BasisKind::B(i), 0, i, 1);
    }
    let l: Vec<usize> = (1..=n).map(|i| push(format!("L{i}"), BasisKind::Loop(i), i, i, 1)).collect();
    let c: Vec<usize> =
        nonpivots.iter().map(|&j| push(format!("C{}", j + 1), BasisKind::Coset(j + 1), 0, 0, 1)).collect();

    // B_i A_i as a combination of the coset basis.
    let class: Vec<SparseVec> = (0..n)
        .map(|i| {
            if let Some(k) = nonpivots.iter().position(|&j| j == i) {
                vec![(c[k], Rat::one())]
            } else {
                let row = pivots.iter().position(|&p| p == i).expect("pivot column");
                let v = nonpivots.iter().enumerate().map(|(k, &j)| (c[k], -r.get(row, j))).collect();
                sparse::normalize(v)
            }
        })
        .collect();

    let dim = basis.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for x in 0..dim {
        for y in 0..dim {
            if basis[x].tgt != basis[y].src {
                continue;
            }
            table[x][y] = if basis[x].is_idempotent() {
                vec![(y, Rat::one())]
            } else if basis[y].is_idempotent() {
                vec![(x, Rat::one())]
            } else {
                match (basis[x].kind, basis[y].kind) {
                    (BasisKind::A(i), BasisKind::B(j)) if i == j => vec![(l[i - 1], Rat::one())],
                    (BasisKind::B(i), BasisKind::A(j)) if i == j => class[i - 1].clone(),
                    _ => Vec::new(),
                }
            };
        }
    }
    let by_label = basis.iter().enumerate().map(|(i, e)| (e.label.clone(), i)).collect();
    EWAlgebra { w: w.clone(), basis, table, by_label }
}

impl EWAlgebra {
    pub fn w(&self) -> &SubspaceW {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.w.n
    }

    pub fn g(&self) -> usize {
        self.w.g
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertices(&self) -> usize {
        self.w.n + 1
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn src(&self, i: usize) -> usize {
        self.basis[i].src
    }

    pub fn tgt(&self, i: usize) -> usize {
        self.basis[i].tgt
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.basis[i].is_idempotent()
    }

    /// Index of the idempotent at vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        v
    }

    pub fn radical(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&i| !self.is_idempotent(i))
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    /// Product of two basis elements (zero if not composable).
    pub fn mul(&self, x: usize, y: usize) -> &SparseVec {
        &self.table[x][y]
    }

    pub fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in &self.table[*i][*j] {
                    out.push((*k, &ab * c));
                }
            }
        }
        sparse::normalize(out)
    }

    pub fn unit(&self) -> SparseVec {
        (0..self.vertices()).map(|v| (v, Rat::one())).collect()
    }

    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for e in &self.basis {
            *out.entry(e.degree).or_insert(0) += 1;
        }
        out
    }

    /// Checks associativity on all basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|x| {
            (0..d).all(|y| {
                (0..d).all(|z| {
                    let xy_z = self.mul_vec(self.mul(x, y), &vec![(z, Rat::one())]);
                    let x_yz = self.mul_vec(&vec![(x, Rat::one())], self.mul(y, z));
                    xy_z == x_yz
                })
            })
        })
    }

    pub fn to_json(&self) -> EwDump {
        let mut constants = Vec::new();
        for x in 0..self.dim() {
            for y in 0..self.dim() {
                let v = self.mul(x, y);
                if v.is_empty() {
                    continue;
                }
                constants.push(StructureConstant {
                    left: self.label(x).to_string(),
                    right: self.label(y).to_string(),
                    value: v.iter().map(|(k, c)| (self.label(*k).to_string(), c.clone())).collect(),
                });
            }
        }
        EwDump {
            n: self.n(),
            g: self.g(),
            w: self.w.rows.to_dense(),
            dim: self.dim(),
            basis: self
                .basis
                .iter()
                .map(|e| BasisEntry { label: e.label.clone(), src: e.src, tgt: e.tgt, degree: e.degree })
                .collect(),
            graded_dims: self.graded_dims(),
            structure_constants: constants,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisEntry {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
    pub degree: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StructureConstant {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, Rat>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EwDump {
    pub n: usize,
    pub g: usize,
    pub w: Vec<Vec<Rat>>,
    pub dim: usize,
    pub basis: Vec<BasisEntry>,
    pub graded_dims: BTreeMap<i32, usize>,
    pub structure_constants: Vec<StructureConstant>,
}

/// Diagonal algebra isomorphism E_W → E_{λ·W}.
#[derive(Clone, Debug)]
pub struct Rescaling {
    pub source: EWAlgebra,
    pub target: EWAlgebra,
    /// Image of each source basis element as a multiple of the same-labelled
    /// target basis element.
    pub factors: Vec<Rat>,
}

pub fn gm_rescale(e: &EWAlgebra, lambda: &[Rat]) -> Result<Rescaling> {
    let target_w = e.w.rescale(lambda)?;
    let target = build_ew(&target_w);
    let factors = e
        .basis
        .iter()
        .map(|b| match b.kind {
            BasisKind::Idempotent(_) | BasisKind::A(_) => Rat::one(),
            BasisKind::B(i) | BasisKind::Loop(i) | BasisKind::Coset(i) => lambda[i - 1].clone(),
        })
        .collect();
    Ok(Rescaling { source: e.clone(), target, factors })
}

impl Rescaling {
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        x.iter().map(|(i, c)| (*i, c * &self.factors[*i])).collect()
    }

    /// φ(x)φ(y) = φ(xy) on every pair of basis elements.
    pub fn intertwines(&self) -> bool {
        let d = self.source.dim();
        if d != self.target.dim() || self.source.basis.iter().zip(&self.target.basis).any(|(a, b)| a.label != b.label) {
            return false;
        }
        (0..d).all(|x| {
            (0..d).all(|y| {
                let lhs = self.target.mul_vec(&vec![(x, self.factors[x].clone())], &vec![(y, self.factors[y].clone())]);
                let rhs = self.apply(self.source.mul(x, y));
                lhs == rhs
            })
        })
    }

    /// `other ∘ self`, provided `other` starts where `self` ends.
    pub fn then(&self, other: &Rescaling) -> Option<Rescaling> {
        if !self.target.w.same_as(&other.source.w) {
            return None;
        }
        let factors = self.factors.iter().zip(&other.factors).map(|(a, b)| a * b).collect();
        Some(Rescaling { source: self.source.clone(), target: other.target.clone(), factors })
    }

    pub fn is_identity(&self) -> bool {
        self.source.w.same_as(&self.target.w) && self.factors.iter().all(|f| f.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn cusp_algebra() {
        let e = build_ew(&SubspaceW::zero(1));
        assert_eq!(e.dim(), 6);
        let (b, a) = (e.index_of("B1").unwrap(), e.index_of("A1").unwrap());
        assert_eq!(e.mul(b, a), &vec![(e.index_of("C1").unwrap(), q(1))]);
        assert_eq!(e.mul(a, b), &vec![(e.index_of("L1").unwrap(), q(1))]);
        assert!(e.is_associative());
    }

    #[test]
    fn line_algebra_kills_loop() {
        let e = build_ew(&SubspaceW::full(1));
        assert_eq!(e.dim(), 5);
        let (b, a) = (e.index_of("B1").unwrap(), e.index_of("A1").unwrap());
        assert!(e.mul(b, a).is_empty());
    }

    #[test]
    fn coset_relation_for_diagonal_w() {
        let w = SubspaceW::new(2, 1, ExactMatrix::from_ints(&[&[1, 1]])).unwrap();
        let e = build_ew(&w);
        assert_eq!(e.dim(), 10);
        let b1a1 = e.mul(e.index_of("B1").unwrap(), e.index_of("A1").unwrap()).clone();
        let b2a2 = e.mul(e.index_of("B2").unwrap(), e.index_of("A2").unwrap()).clone();
        assert_eq!(b1a1, sparse::scale(&b2a2, &q(-1)));
        assert!(e.is_associative());
    }

    #[test]
    fn graded_dimensions() {
        let cases = [(SubspaceW::zero(1), 3, 3), (SubspaceW::full(3), 7, 6)];
        for (w, d0, d1) in cases {
            let dims = build_ew(&w).graded_dims();
            assert_eq!(dims.get(&0), Some(&d0));
            assert_eq!(dims.get(&1), Some(&d1));
            assert_eq!(dims.len(), 2);
        }
    }

    #[test]
    fn rank_deficient_rejected() {
        let err = SubspaceW::new(2, 0, ExactMatrix::from_ints(&[&[1, 1], &[2, 2]])).unwrap_err();
        assert_eq!(err, Error::RankDeficient { expected: 2, found: 1 });
    }

    #[test]
    fn rescaling_intertwines() {
        let w = SubspaceW::new(2, 1, ExactMatrix::from_ints(&[&[1, 1]])).unwrap();
        let e = build_ew(&w);
        let r = gm_rescale(&e, &[q(2), q(1)]).unwrap();
        assert!(r.intertwines());
        let expected = SubspaceW::new(2, 1, ExactMatrix::from_ints(&[&[2, 1]])).unwrap();
        assert!(r.target.w().same_as(&expected));
        assert!(gm_rescale(&e, &[q(1), q(1)]).unwrap().is_identity());
        assert!(gm_rescale(&e, &[q(0), q(1)]).is_err());
    }
}
