//! Sparse rational vectors (sorted `(index, value)` lists) and incremental
//! row echelon reduction.

use super::rat::Rat;

pub type SparseVec = Vec<(usize, Rat)>;

/// Sort by index, merge duplicates and drop zeros.
pub fn normalize(mut v: SparseVec) -> SparseVec {
    if v.windows(2).all(|w| w[0].0 < w[1].0) && v.iter().all(|e| !e.1.is_zero()) {
        return v;
    }
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn from_dense(v: &[Rat]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> Rat {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rat::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc.add_mul(&a[i].1, &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

pub fn dot_dense(a: &SparseVec, x: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, v) in a {
        acc.add_mul(v, &x[*i]);
    }
    acc
}

/// `a + s·b`.
pub fn axpy(a: &SparseVec, s: &Rat, b: &SparseVec) -> SparseVec {
    if s.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.add_mul(s, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &SparseVec, s: &Rat) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * s)).collect()
}

/// Row echelon form built one row at a time. Each stored row has leading
/// coefficient 1 at its pivot column; rows are reduced only at their
/// leading entry until `into_reduced` is called.
pub struct Echelon {
    cols: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub fn new(cols: usize) -> Echelon {
        Echelon { cols, pivot_of_col: vec![None; cols], rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Echelon {
        let mut e = Echelon::new(cols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduce `v` against the stored pivots at its leading entries.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, a)) = v.first() {
            match self.pivot_of_col[*c] {
                Some(k) => {
                    let s = -a;
                    v = axpy(&v, &s, &self.rows[k]);
                }
                None => break,
            }
        }
        v
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((c, a)) = v.first() else {
            return false;
        };
        let c = *c;
        let inv = a.recip();
        let v = scale(&v, &inv);
        self.pivot_of_col[c] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    /// Fully reduced rows sorted by pivot column, with the pivot columns.
    pub fn into_reduced(self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut order: Vec<(usize, usize)> =
            self.pivot_of_col.iter().enumerate().filter_map(|(c, k)| k.map(|k| (c, k))).collect();
        order.sort();
        let pivots: Vec<usize> = order.iter().map(|&(c, _)| c).collect();
        let mut is_pivot = vec![usize::MAX; self.cols];
        for (pos, &(c, _)) in order.iter().enumerate() {
            is_pivot[c] = pos;
        }
        let mut rows: Vec<SparseVec> = order.iter().map(|&(_, k)| self.rows[k].clone()).collect();
        for pos in (0..rows.len()).rev() {
            let hits: Vec<(usize, Rat)> = rows[pos]
                .iter()
                .skip(1)
                .filter(|(c, _)| is_pivot[*c] != usize::MAX)
                .map(|(c, v)| (is_pivot[*c], v.clone()))
                .collect();
            let mut r = std::mem::take(&mut rows[pos]);
            for (other, v) in hits {
                r = axpy(&r, &-v, &rows[other]);
            }
            rows[pos] = r;
        }
        (rows, pivots)
    }
}

/// Rank of the span of `rows`.
pub fn rank(cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    Echelon::from_rows(cols, rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn axpy_cancels() {
        let a = vec![(0, q(1)), (2, q(3))];
        let b = vec![(0, q(1)), (1, q(1)), (2, q(3))];
        assert_eq!(axpy(&a, &q(-1), &b), vec![(1, q(-1))]);
    }

    #[test]
    fn normalize_merges() {
        let v = vec![(3, q(1)), (1, q(2)), (3, q(-1)), (0, q(0))];
        assert_eq!(normalize(v), vec![(1, q(2))]);
    }

    #[test]
    fn echelon_rank() {
        let rows = vec![vec![(0, q(1)), (1, q(1))], vec![(0, q(2)), (1, q(2))], vec![(1, q(5))]];
        assert_eq!(rank(2, rows), 2);
    }
}
