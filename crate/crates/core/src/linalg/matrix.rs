use std::fmt;

use serde::{Deserialize, Serialize};

use super::rat::Rat;
use super::sparse::{self, SparseVec};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense rational coordinate vector.
pub type ExactVector = Vec<Rat>;

/// Row-sparse exact rational matrix. Rows hold strictly increasing column
/// indices and never store zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let data = (0..n).map(|i| vec![(i, Rat::one())]).collect();
        ExactMatrix { rows: n, cols: n, data }
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Result<ExactMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ExactMatrix::from_dense_with_cols(rows, cols))
    }

    /// Like `from_dense` but with an explicit column count (so that a matrix
    /// with zero rows keeps its width).
    pub fn from_dense_with_cols(rows: &[Vec<Rat>], cols: usize) -> ExactMatrix {
        let data = rows.iter().map(|r| sparse::from_dense(r)).collect();
        ExactMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> ExactMatrix {
        let dense: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
        let cols = dense.first().map_or(0, |r| r.len());
        ExactMatrix::from_dense_with_cols(&dense, cols)
    }

    /// Rows given as sparse vectors. Entries are sorted, merged and zeros dropped.
    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> ExactMatrix {
        let data: Vec<SparseVec> = rows.into_iter().map(sparse::normalize).collect();
        for r in &data {
            if let Some(&(c, _)) = r.last() {
                assert!(c < cols, "column index {c} out of bounds {cols}");
            }
        }
        ExactMatrix { rows: data.len(), cols, data }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Rat)>) -> ExactMatrix {
        let mut data = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet index out of bounds");
            data[r].push((c, v));
        }
        ExactMatrix::from_sparse_rows(cols, data)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &SparseVec> {
        self.data.iter()
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        self.data.iter().map(|r| sparse::to_dense(r, self.cols)).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, x: &[Rat]) -> ExactVector {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        self.data.iter().map(|r| sparse::dot_dense(r, x)).collect()
    }

    pub fn mul_sparse_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            let v = sparse::dot(r, x);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc: SparseVec = Vec::new();
                for (k, a) in r {
                    acc = sparse::axpy(&acc, a, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// Reduced row echelon form with its pivot columns (strictly increasing).
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let echelon = sparse::Echelon::from_rows(self.cols, self.data.iter().cloned());
        let (rows, pivots) = echelon.into_reduced();
        let mut data = rows;
        data.resize(self.rows, Vec::new());
        (ExactMatrix { rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        sparse::rank(self.cols, self.data.iter().cloned())
    }

    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (k, &p) in pivots.iter().enumerate() {
                let c = r.get(k, free);
                if !c.is_zero() {
                    v[p] = -c;
                }
            }
            basis.push(v);
        }
        Subspace::from_independent(self.cols, basis)
    }

    /// Canonical basis of the column span: the nonzero rows of rref(mᵀ).
    pub fn image_basis(&self) -> Subspace {
        let (r, pivots) = self.transpose().rref();
        let basis = (0..pivots.len()).map(|k| sparse::to_dense(r.row(k), self.rows)).collect();
        Subspace::from_independent(self.rows, basis)
    }

    /// Some `x` with `self · x = b`, free variables set to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<ExactVector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug: Vec<SparseVec> = self
            .data
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut r = r.clone();
                if !bi.is_zero() {
                    r.push((self.cols, bi.clone()));
                }
                r
            })
            .collect();
        let (rows, pivots) = sparse::Echelon::from_rows(self.cols + 1, aug).into_reduced();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            if let Some((c, v)) = row.last() {
                if *c == self.cols {
                    x[p] = v.clone();
                }
            }
        }
        Some(x)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DenseForm(Vec<Vec<Rat>>);

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DenseForm(self.to_dense()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let DenseForm(rows) = DenseForm::deserialize(d)?;
        ExactMatrix::from_dense(&rows).map_err(serde::de::Error::custom)
    }
}

/// Rank of a dense list of row vectors.
pub fn rank_of(rows: &[Vec<Rat>], cols: usize) -> usize {
    sparse::rank(cols, rows.iter().map(|r| sparse::from_dense(r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn rref_small_cases() {
        let (r, p) = ExactMatrix::identity(3).rref();
        assert_eq!(r, ExactMatrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = ExactMatrix::zero(2, 2).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());

        let (r, p) = ExactMatrix::from_ints(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, ExactMatrix::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_back_substitutes() {
        let m = ExactMatrix::from_ints(&[&[1, 1, 1], &[0, 1, 2], &[1, 2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1, 2]);
        assert_eq!(r, ExactMatrix::identity(3));
        let m = ExactMatrix::from_ints(&[&[0, 2, 4, 2], &[0, 1, 2, 3]]);
        let (r, p) = m.rref();
        assert_eq!(p, vec![1, 3]);
        assert_eq!(r, ExactMatrix::from_ints(&[&[0, 1, 2, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn kernel_and_image() {
        let k = ExactMatrix::from_ints(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.basis(), &[vec![q(-1), q(1)]]);
        assert_eq!(ExactMatrix::identity(4).kernel_basis().dim(), 0);
        assert_eq!(ExactMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]).kernel_basis().dim(), 2);

        assert_eq!(ExactMatrix::zero(3, 2).image_basis().dim(), 0);
        assert_eq!(ExactMatrix::identity(3).image_basis().dim(), 3);
        let im = ExactMatrix::from_ints(&[&[1, 1], &[1, 1]]).image_basis();
        assert_eq!(im.basis(), &[vec![q(1), q(1)]]);
    }

    #[test]
    fn solve_cases() {
        let b = vec![q(3), q(-1)];
        assert_eq!(ExactMatrix::identity(2).solve(&b), Some(b.clone()));
        assert_eq!(ExactMatrix::zero(2, 2).solve(&b), None);
        assert_eq!(ExactMatrix::from_ints(&[&[1, 1]]).solve(&[q(3)]), Some(vec![q(3), q(0)]));
        let m = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.solve(&[q(1), q(3)]), None);
        assert_eq!(m.solve(&[q(2), q(4)]), Some(vec![q(2), q(0)]));
    }

    #[test]
    fn product_and_transpose() {
        let a = ExactMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = a.transpose();
        assert_eq!(a.mul(&b).unwrap(), ExactMatrix::from_ints(&[&[5, 11], &[11, 25]]));
        assert!(a.mul(&ExactMatrix::zero(3, 1)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = ExactMatrix::from_dense(&[vec![Rat::new(1, 2), q(0)], vec![q(-3), Rat::new(7, 5)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","0"],["-3","7/5"]]"#);
        let back: ExactMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
