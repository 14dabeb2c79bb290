use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cochain::{sdeg, sign, Cochain, Key, Tuple};
use crate::error::{Error, Result};
use crate::linalg::{sparse, Echelon, ExactMatrix, Rat, SparseVec};
use crate::quiver::EWAlgebra;

/// Ordered basis of the normalized cochain space of arity `s` and internal
/// degree `t`: pairs (composable radical tuple, value basis element), sorted
/// lexicographically by tuple and then by value.
#[derive(Clone, Debug)]
pub struct CochainBasis {
    pub s: usize,
    pub t: i32,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
}

/// Precomputed adjacency data shared by the enumeration and the differential.
pub(crate) struct Shape {
    rad_from: Vec<Vec<u8>>,
    rad_to: Vec<Vec<u8>>,
    /// (src, tgt, degree) → value basis elements.
    values: HashMap<(usize, usize, i32), Vec<u8>>,
    /// w → all (u, v, c) with u, v radical and u·v ∋ c·w.
    factors: Vec<Vec<(u8, u8, Rat)>>,
}

impl Shape {
    pub(crate) fn new(e: &EWAlgebra) -> Shape {
        let mut rad_from = vec![Vec::new(); e.vertices()];
        let mut rad_to = vec![Vec::new(); e.vertices()];
        let mut values: HashMap<(usize, usize, i32), Vec<u8>> = HashMap::new();
        let mut factors = vec![Vec::new(); e.dim()];
        for x in 0..e.dim() {
            values.entry((e.src(x), e.tgt(x), e.degree(x))).or_default().push(x as u8);
            if e.is_idempotent(x) {
                continue;
            }
            rad_from[e.src(x)].push(x as u8);
            rad_to[e.tgt(x)].push(x as u8);
        }
        for u in e.radical() {
            for v in e.radical() {
                for (w, c) in e.mul(u, v) {
                    factors[*w].push((u as u8, v as u8, c.clone()));
                }
            }
        }
        Shape { rad_from, rad_to, values, factors }
    }
}

impl CochainBasis {
    pub fn new(e: &EWAlgebra, s: usize, t: i32) -> CochainBasis {
        CochainBasis::with_shape(e, &Shape::new(e), s, t)
    }

    pub(crate) fn with_shape(e: &EWAlgebra, shape: &Shape, s: usize, t: i32) -> CochainBasis {
        let mut keys = Vec::new();
        let empty = Vec::new();
        if s == 0 {
            for v in 0..e.vertices() {
                for &y in shape.values.get(&(v, v, t)).unwrap_or(&empty) {
                    keys.push((Vec::new(), y));
                }
            }
            keys.sort();
        } else {
            // The tuple degree must be −t or 1−t since values have degree 0 or 1.
            let (lo, hi) = (-t, 1 - t);
            let mut tuple = Vec::with_capacity(s);
            for v in 0..e.vertices() {
                for &x in &shape.rad_from[v] {
                    tuple.push(x);
                    extend(e, shape, s, t, lo, hi, e.degree(x as usize), &mut tuple, &mut keys);
                    tuple.pop();
                }
            }
            keys.sort();
        }
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        CochainBasis { s, t, keys, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn index_of(&self, key: &Key) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn to_vector(&self, c: &Cochain) -> Result<SparseVec> {
        let mut v = Vec::with_capacity(c.entries.len());
        for (k, x) in &c.entries {
            let i = self.index_of(k).ok_or_else(|| {
                Error::Dimension(format!("cochain term {k:?} is outside the ({}, {}) basis", self.s, self.t))
            })?;
            v.push((i, x.clone()));
        }
        Ok(sparse::normalize(v))
    }

    pub fn from_vector(&self, v: &SparseVec) -> Cochain {
        let mut c = Cochain::zero(self.s, self.t);
        for (i, x) in v {
            c.add_term(self.keys[*i].clone(), x.clone());
        }
        c
    }

    pub fn basis_cochain(&self, i: usize) -> Cochain {
        self.from_vector(&vec![(i, Rat::one())])
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    e: &EWAlgebra,
    shape: &Shape,
    s: usize,
    t: i32,
    lo: i32,
    hi: i32,
    deg: i32,
    tuple: &mut Tuple,
    keys: &mut Vec<Key>,
) {
    let remaining = (s - tuple.len()) as i32;
    if deg > hi || deg + remaining < lo {
        return;
    }
    if remaining == 0 {
        let src = e.src(tuple[0] as usize);
        let tgt = e.tgt(*tuple.last().unwrap() as usize);
        if let Some(ys) = shape.values.get(&(src, tgt, deg + t)) {
            for &y in ys {
                keys.push((tuple.clone(), y));
            }
        }
        return;
    }
    let v = e.tgt(*tuple.last().unwrap() as usize);
    for &x in &shape.rad_from[v] {
        tuple.push(x);
        extend(e, shape, s, t, lo, hi, deg + e.degree(x as usize), tuple, keys);
        tuple.pop();
    }
}

/// Images δ(b) of the domain basis vectors, as sparse vectors over the
/// codomain basis.
///
/// δφ = [ms₂, φ] expands to
/// `(−1)^{|φ(x)|} φ(x)·x_{s+1} + (−1)^{‖φ‖‖x_1‖+|x_1|} x_1·φ(x_2..)
///  − (−1)^{‖φ‖} Σ_a (−1)^{Σ_{k≤a}‖x_k‖ + |x_{a+1}|} φ(.., x_{a+1}x_{a+2}, ..)`.
pub(crate) fn differential_images(
    e: &EWAlgebra,
    shape: &Shape,
    dom: &CochainBasis,
    cod: &CochainBasis,
) -> Vec<SparseVec> {
    let s = dom.s;
    let p = s as i32 + dom.t - 1;
    let lookup = |key: Key| -> usize {
        cod.index_of(&key).unwrap_or_else(|| panic!("differential term {key:?} outside codomain basis"))
    };
    dom.keys
        .par_iter()
        .map(|(tau, y)| {
            let y = *y;
            let yu = y as usize;
            let mut img: SparseVec = Vec::new();
            let (first_src, last_tgt) =
                if s == 0 { (e.src(yu), e.tgt(yu)) } else { (e.src(tau[0] as usize), e.tgt(tau[s - 1] as usize)) };
            let sy = sign(e.degree(yu));
            for &z in &shape.rad_from[last_tgt] {
                for (w, c) in e.mul(yu, z as usize) {
                    let mut t2 = tau.clone();
                    t2.push(z);
                    img.push((lookup((t2, *w as u8)), &sy * c));
                }
            }
            for &z in &shape.rad_to[first_src] {
                let sz = sign(p * sdeg(e, z) + e.degree(z as usize));
                for (w, c) in e.mul(z as usize, yu) {
                    let mut t2 = Vec::with_capacity(s + 1);
                    t2.push(z);
                    t2.extend_from_slice(tau);
                    img.push((lookup((t2, *w as u8)), &sz * c));
                }
            }
            let mut prefix = 0;
            for a in 0..s {
                for (u, v, c) in &shape.factors[tau[a] as usize] {
                    let sg = -sign(p + prefix + e.degree(*u as usize));
                    let mut t2 = Vec::with_capacity(s + 1);
                    t2.extend_from_slice(&tau[..a]);
                    t2.push(*u);
                    t2.push(*v);
                    t2.extend_from_slice(&tau[a + 1..]);
                    img.push((lookup((t2, y)), &sg * c));
                }
                prefix += sdeg(e, tau[a]);
            }
            sparse::normalize(img)
        })
        .collect()
}

/// Matrix of δ from arity `s` to arity `s+1` at internal degree `t`
/// (rows index the codomain basis, columns the domain basis).
pub fn differential(e: &EWAlgebra, s: usize, t: i32) -> ExactMatrix {
    let shape = Shape::new(e);
    let dom = CochainBasis::with_shape(e, &shape, s, t);
    let cod = CochainBasis::with_shape(e, &shape, s + 1, t);
    let images = differential_images(e, &shape, &dom, &cod);
    let mut triplets = Vec::new();
    for (j, img) in images.into_iter().enumerate() {
        for (i, c) in img {
            triplets.push((i, j, c));
        }
    }
    ExactMatrix::from_triplets(cod.len(), dom.len(), triplets)
}

/// Apply δ to a cochain.
pub fn apply_differential(e: &EWAlgebra, phi: &Cochain) -> Result<Cochain> {
    let shape = Shape::new(e);
    let dom = CochainBasis::with_shape(e, &shape, phi.s, phi.t);
    let cod = CochainBasis::with_shape(e, &shape, phi.s + 1, phi.t);
    let v = dom.to_vector(phi)?;
    let mut out: SparseVec = Vec::new();
    for (j, c) in &v {
        let img = differential_images_one(e, &shape, &dom, &cod, *j);
        out = sparse::axpy(&out, c, &img);
    }
    Ok(cod.from_vector(&out))
}

fn differential_images_one(
    e: &EWAlgebra,
    shape: &Shape,
    dom: &CochainBasis,
    cod: &CochainBasis,
    j: usize,
) -> SparseVec {
    let single = CochainBasis { s: dom.s, t: dom.t, keys: vec![dom.keys[j].clone()], index: HashMap::new() };
    differential_images(e, shape, &single, cod).pop().unwrap_or_default()
}

/// Rank of δ: arity s → s+1 at internal degree t.
pub fn differential_rank(e: &EWAlgebra, s: usize, t: i32) -> usize {
    let shape = Shape::new(e);
    rank_with_shape(e, &shape, s, t).1
}

/// (dim of the domain, rank of δ).
pub(crate) fn rank_with_shape(e: &EWAlgebra, shape: &Shape, s: usize, t: i32) -> (usize, usize) {
    let dom = CochainBasis::with_shape(e, shape, s, t);
    if dom.is_empty() {
        return (0, 0);
    }
    let cod = CochainBasis::with_shape(e, shape, s + 1, t);
    if cod.is_empty() {
        return (dom.len(), 0);
    }
    let mut images = differential_images(e, shape, &dom, &cod);
    images.sort_by_key(|r| r.len());
    let ech = Echelon::from_rows(cod.len(), images);
    (dom.len(), ech.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDims {
    pub dim_cochain: usize,
    pub dim_cocycle: usize,
    pub dim_coboundary: usize,
    pub dim_hh: usize,
}

/// Dimensions indexed by (cohomological degree i, internal degree t).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BidegreeTable {
    pub cells: BTreeMap<(i32, i32), CellDims>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidegreeRow {
    pub i: i32,
    pub t: i32,
    pub dim_cochain: usize,
    pub dim_cocycle: usize,
    pub dim_coboundary: usize,
    #[serde(rename = "dim_HH")]
    pub dim_hh: usize,
}

impl BidegreeTable {
    pub fn hh(&self, i: i32, t: i32) -> Option<usize> {
        self.cells.get(&(i, t)).map(|c| c.dim_hh)
    }

    pub fn rows(&self) -> Vec<BidegreeRow> {
        self.cells
            .iter()
            .map(|(&(i, t), c)| BidegreeRow {
                i,
                t,
                dim_cochain: c.dim_cochain,
                dim_cocycle: c.dim_cocycle,
                dim_coboundary: c.dim_coboundary,
                dim_hh: c.dim_hh,
            })
            .collect()
    }

    /// Σ_{t<0} dim HH^i_t over the table.
    pub fn negative_total(&self, i: i32) -> usize {
        self.cells.iter().filter(|(&(ii, t), _)| ii == i && t < 0).map(|(_, c)| c.dim_hh).sum()
    }
}

/// Rank data for one internal degree, indexed by arity.
fn ranks_for(e: &EWAlgebra, shape: &Shape, cells: &[(usize, i32)]) -> HashMap<(usize, i32), (usize, usize)> {
    let mut order: Vec<(usize, i32)> = cells.to_vec();
    // Large cells first for better load balance.
    order.sort_by_key(|&(s, t)| std::cmp::Reverse((s as i32 + t.abs()) * 1000 + s as i32));
    order.par_iter().map(|&(s, t)| ((s, t), rank_with_shape(e, shape, s, t))).collect()
}

/// dim HH^i(E)_t.
pub fn hh_dim(e: &EWAlgebra, i: i32, t: i32) -> usize {
    let table = bidegree_cells(e, &[(i, t)]);
    table.hh(i, t).unwrap_or(0)
}

/// Table for an explicit list of bidegrees.
pub fn bidegree_cells(e: &EWAlgebra, wanted: &[(i32, i32)]) -> BidegreeTable {
    let shape = Shape::new(e);
    let mut cells = Vec::new();
    for &(i, t) in wanted {
        let s = i - t;
        if s < 0 || i < 0 {
            continue;
        }
        cells.push((s as usize, t));
        if s >= 1 {
            cells.push((s as usize - 1, t));
        }
    }
    cells.sort();
    cells.dedup();
    let ranks = ranks_for(e, &shape, &cells);
    let mut table = BidegreeTable::default();
    for &(i, t) in wanted {
        let s = i - t;
        if s < 0 || i < 0 {
            table.cells.insert((i, t), CellDims { dim_cochain: 0, dim_cocycle: 0, dim_coboundary: 0, dim_hh: 0 });
            continue;
        }
        let (dim, rank_out) = ranks[&(s as usize, t)];
        let rank_in = if s >= 1 { ranks[&(s as usize - 1, t)].1 } else { 0 };
        let cocycle = dim - rank_out;
        table.cells.insert(
            (i, t),
            CellDims { dim_cochain: dim, dim_cocycle: cocycle, dim_coboundary: rank_in, dim_hh: cocycle - rank_in },
        );
    }
    table
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub table: BidegreeTable,
    /// Largest j with HH²_{−j} ≠ 0 in range.
    pub last_hh2: Option<i32>,
    /// Largest j with HH³_{−j} ≠ 0 in range.
    pub last_hh3: Option<i32>,
}

/// All cells 0 ≤ i ≤ i_max, t_min ≤ t ≤ 0.
pub fn vanishing_scan(e: &EWAlgebra, i_max: i32, t_min: i32) -> ScanReport {
    let wanted: Vec<(i32, i32)> = (0..=i_max).flat_map(|i| (t_min..=0).map(move |t| (i, t))).collect();
    let table = bidegree_cells(e, &wanted);
    let last = |i: i32| {
        table.cells.iter().filter(|(&(ii, t), c)| ii == i && t < 0 && c.dim_hh > 0).map(|(&(_, t), _)| -t).max()
    };
    let (last_hh2, last_hh3) = (last(2), last(3));
    ScanReport { table, last_hh2, last_hh3 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::cochain::{gerstenhaber, ms2};
    use crate::quiver::{build_ew, SubspaceW};

    #[test]
    fn empty_below_degree_bound() {
        let e = build_ew(&SubspaceW::zero(1));
        for s in 0..5 {
            assert!(CochainBasis::new(&e, s, -(s as i32) - 1).is_empty());
        }
    }

    #[test]
    fn zero_arity_is_loop_values() {
        let e = build_ew(&SubspaceW::zero(1));
        let b = CochainBasis::new(&e, 0, 0);
        assert_eq!(b.len(), 2);
        let b = CochainBasis::new(&e, 0, 1);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn delta_squared_vanishes() {
        let e = build_ew(&SubspaceW::zero(1));
        for t in -4..=1 {
            for s in 0..5 {
                let d1 = differential(&e, s, t);
                let d2 = differential(&e, s + 1, t);
                assert!(d2.mul(&d1).unwrap().is_zero(), "s={s} t={t}");
            }
        }
    }

    #[test]
    fn matrix_matches_bracket() {
        let e = build_ew(&SubspaceW::zero(1));
        let m = ms2(&e);
        for (s, t) in [(1, 0), (2, -1), (3, -2), (2, 0)] {
            let dom = CochainBasis::new(&e, s, t);
            let cod = CochainBasis::new(&e, s + 1, t);
            let d = differential(&e, s, t);
            for j in 0..dom.len() {
                let phi = dom.basis_cochain(j);
                let br = gerstenhaber(&e, &m, &phi);
                let col: SparseVec = (0..cod.len())
                    .filter_map(|i| {
                        let x = d.get(i, j);
                        (!x.is_zero()).then_some((i, x))
                    })
                    .collect();
                assert_eq!(cod.to_vector(&br).unwrap(), col);
            }
        }
    }

    #[test]
    fn cusp_small_cells() {
        let e = build_ew(&SubspaceW::zero(1));
        assert_eq!(hh_dim(&e, 0, 0), 1);
        assert_eq!(hh_dim(&e, 1, -1), 0);
        assert_eq!(hh_dim(&e, 2, -4), 1);
    }
}
