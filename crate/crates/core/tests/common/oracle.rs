//! Unreduced Hochschild complex with the unsuspended textbook differential,
//! relative to the vertex idempotents: arguments are composable tuples of
//! any basis elements (idempotents included), no normalization.

use std::collections::HashMap;

use amoduli::linalg::{sparse, Rat, SparseVec};
use amoduli::quiver::EWAlgebra;

pub type OKey = (Vec<u8>, u8);

pub struct OracleBasis {
    pub keys: Vec<OKey>,
    pub index: HashMap<OKey, usize>,
    by_tuple: HashMap<Vec<u8>, Vec<u8>>,
}

fn values(e: &EWAlgebra, src: usize, tgt: usize, deg: i32) -> Vec<u8> {
    (0..e.dim()).filter(|&y| e.src(y) == src && e.tgt(y) == tgt && e.degree(y) == deg).map(|y| y as u8).collect()
}

impl OracleBasis {
    pub fn new(e: &EWAlgebra, s: usize, t: i32) -> OracleBasis {
        let mut keys = Vec::new();
        if s == 0 {
            for v in 0..e.vertices() {
                for y in values(e, v, v, t) {
                    keys.push((vec![], y));
                }
            }
        } else {
            let mut stack: Vec<(Vec<u8>, i32)> = (0..e.dim()).map(|x| (vec![x as u8], e.degree(x))).collect();
            while let Some((tup, d)) = stack.pop() {
                if d > 1 - t {
                    continue;
                }
                if tup.len() == s {
                    let first = tup[0] as usize;
                    let last = *tup.last().unwrap() as usize;
                    for y in values(e, e.src(first), e.tgt(last), d + t) {
                        keys.push((tup.clone(), y));
                    }
                    continue;
                }
                let last = *tup.last().unwrap() as usize;
                for x in 0..e.dim() {
                    if e.src(x) == e.tgt(last) {
                        let mut next = tup.clone();
                        next.push(x as u8);
                        stack.push((next, d + e.degree(x)));
                    }
                }
            }
        }
        keys.sort();
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut by_tuple: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
        for (tup, y) in &keys {
            by_tuple.entry(tup.clone()).or_default().push(*y);
        }
        OracleBasis { keys, index, by_tuple }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    fn tuples(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.by_tuple.keys()
    }
}

fn sgn(odd: i32) -> Rat {
    if odd.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Matrix of δ: C^s_t → C^{s+1}_t as columns (one sparse vector per source key).
/// (δφ)(a₁..a_{s+1}) = (−1)^{t|a₁|} a₁φ(a₂..) + Σ (−1)^i φ(..a_i a_{i+1}..) + (−1)^{s+1} φ(a₁..a_s)a_{s+1}.
pub fn oracle_differential(e: &EWAlgebra, src: &OracleBasis, dst: &OracleBasis, s: usize, t: i32) -> Vec<SparseVec> {
    let mut cols: Vec<SparseVec> = vec![Vec::new(); src.len()];
    let mut push = |row: usize, col: usize, c: Rat| cols[col].push((row, c));
    let rows_for = |tup: &Vec<u8>, z: usize| dst.index.get(&(tup.clone(), z as u8)).copied();
    for a in dst.tuples() {
        let a1 = a[0] as usize;
        let inner = a[1..].to_vec();
        if let Some(ys) = src.by_tuple.get(&inner) {
            for &y in ys {
                let col = src.index[&(inner.clone(), y)];
                for (z, c) in e.mul(a1, y as usize) {
                    if let Some(row) = rows_for(a, *z) {
                        push(row, col, &sgn(t * e.degree(a1)) * c);
                    }
                }
            }
        }
        for i in 0..s {
            for (w, c) in e.mul(a[i] as usize, a[i + 1] as usize) {
                let mut b = a[..i].to_vec();
                b.push(*w as u8);
                b.extend_from_slice(&a[i + 2..]);
                if let Some(ys) = src.by_tuple.get(&b) {
                    for &y in ys {
                        if let Some(row) = rows_for(a, y as usize) {
                            push(row, src.index[&(b.clone(), y)], &sgn(i as i32 + 1) * c);
                        }
                    }
                }
            }
        }
        let last = *a.last().unwrap() as usize;
        let head = a[..s].to_vec();
        if let Some(ys) = src.by_tuple.get(&head) {
            for &y in ys {
                let col = src.index[&(head.clone(), y)];
                for (z, c) in e.mul(y as usize, last) {
                    if let Some(row) = rows_for(a, *z) {
                        push(row, col, &sgn(s as i32 + 1) * c);
                    }
                }
            }
        }
    }
    cols.into_iter().map(sparse::normalize).collect()
}

pub fn oracle_rank(e: &EWAlgebra, s: usize, t: i32) -> usize {
    let src = OracleBasis::new(e, s, t);
    let dst = OracleBasis::new(e, s + 1, t);
    sparse::rank(dst.len(), oracle_differential(e, &src, &dst, s, t))
}

/// dim HH^i_t of the unreduced complex (arity s = i − t).
pub fn oracle_hh(e: &EWAlgebra, i: i32, t: i32) -> usize {
    let s = i - t;
    if s < 0 {
        return 0;
    }
    let s = s as usize;
    let dim = OracleBasis::new(e, s, t).len();
    let out = oracle_rank(e, s, t);
    let inc = if s > 0 { oracle_rank(e, s - 1, t) } else { 0 };
    dim - out - inc
}
