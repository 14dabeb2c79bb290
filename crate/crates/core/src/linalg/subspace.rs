use serde::{Deserialize, Serialize};

use super::matrix::{ExactMatrix, ExactVector};
use super::rat::Rat;
use super::sparse::{self, Echelon};

/// Linear subspace of Q^ambient_dim given by an independent basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<ExactVector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace::from_independent(ambient_dim, ExactMatrix::identity(ambient_dim).to_dense())
    }

    /// Caller guarantees independence (checked in debug builds).
    pub fn from_independent(ambient_dim: usize, basis: Vec<ExactVector>) -> Subspace {
        debug_assert!(basis.iter().all(|v| v.len() == ambient_dim));
        debug_assert_eq!(super::matrix::rank_of(&basis, ambient_dim), basis.len());
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary vectors; keeps an independent subset in input order.
    pub fn span(ambient_dim: usize, vectors: &[ExactVector]) -> Subspace {
        let mut e = Echelon::new(ambient_dim);
        let mut basis = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
            if e.insert(sparse::from_dense(v)) {
                basis.push(v.clone());
            }
        }
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactVector] {
        &self.basis
    }

    pub fn as_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_dense_with_cols(&self.basis, self.ambient_dim)
    }

    /// rref of the basis matrix: a presentation-independent description.
    pub fn reduced(&self) -> (ExactMatrix, Vec<usize>) {
        self.as_matrix().rref()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let e = Echelon::from_rows(self.ambient_dim, self.basis.iter().map(|b| sparse::from_dense(b)));
        e.reduce(sparse::from_dense(v)).is_empty()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.dim() == other.dim() && self.reduced().0 == other.reduced().0
    }

    /// Span of the standard basis vectors at the non-pivot columns of the
    /// reduced basis matrix.
    pub fn canonical_complement(&self) -> Subspace {
        let (_, pivots) = self.reduced();
        let mut is_pivot = vec![false; self.ambient_dim];
        for p in pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.ambient_dim)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = vec![Rat::zero(); self.ambient_dim];
                v[c] = Rat::one();
                v
            })
            .collect();
        Subspace { ambient_dim: self.ambient_dim, basis }
    }
}

/// Splitting Q^d = S ⊕ K with K the canonical complement of S.
///
/// `split(v)` returns `(κ, σ)` with `κ ∈ K`, `σ ∈ S` and `v = κ + σ`.
#[derive(Clone, Debug)]
pub struct Splitting {
    ambient_dim: usize,
    reduced: Vec<sparse::SparseVec>,
    pivots: Vec<usize>,
}

impl Splitting {
    pub fn new(sub: &Subspace) -> Splitting {
        Splitting::from_rows(sub.ambient_dim, sub.basis.iter().map(|b| sparse::from_dense(b)))
    }

    pub fn from_rows(ambient_dim: usize, rows: impl IntoIterator<Item = sparse::SparseVec>) -> Splitting {
        let (reduced, pivots) = Echelon::from_rows(ambient_dim, rows).into_reduced();
        Splitting { ambient_dim, reduced, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn sub_dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn complement_dim(&self) -> usize {
        self.ambient_dim - self.pivots.len()
    }

    /// Non-pivot coordinates, i.e. the coordinates of the complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn split(&self, v: &sparse::SparseVec) -> (sparse::SparseVec, sparse::SparseVec) {
        let mut sigma: sparse::SparseVec = Vec::new();
        for (row, &p) in self.reduced.iter().zip(&self.pivots) {
            if let Ok(k) = v.binary_search_by_key(&p, |e| e.0) {
                sigma = sparse::axpy(&sigma, &v[k].1, row);
            }
        }
        let kappa = sparse::axpy(v, &-Rat::one(), &sigma);
        (kappa, sigma)
    }

    pub fn in_complement(&self, v: &sparse::SparseVec) -> bool {
        v.iter().all(|(c, _)| self.pivots.binary_search(c).is_err())
    }
}
