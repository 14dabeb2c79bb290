//! Seeded random inputs for property tests, acceptance grids and the CLI.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::ainfinity::{extend_step, gauge_act, AnStructure, Extension, GaugeTransform, Normalizer};
use crate::hochschild::{apply_differential, Cochain, CochainBasis};
use crate::linalg::{sparse, ExactMatrix, Rat, SparseVec};
use crate::quiver::{EWAlgebra, SubspaceW};

pub use rand::SeedableRng;
pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    Rat::from_int(rng.gen_range(-bound..=bound))
}

fn nonzero_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

/// A random point of G(n−g, n) with small integer entries.
pub fn random_w<R: Rng>(rng: &mut R, n: usize, g: usize) -> SubspaceW {
    assert!(g <= n);
    if g == n {
        return SubspaceW::zero(n);
    }
    loop {
        let rows: Vec<Vec<Rat>> = (0..n - g).map(|_| (0..n).map(|_| small_rat(rng, 3)).collect()).collect();
        if let Ok(w) = SubspaceW::new(n, g, ExactMatrix::from_dense_with_cols(&rows, n)) {
            return w;
        }
    }
}

/// Nonzero rationals λ_i = ±p/q with p, q ≤ 4.
pub fn random_lambda<R: Rng>(rng: &mut R, n: usize) -> Vec<Rat> {
    (0..n).map(|_| Rat::new(nonzero_int(rng, 4), rng.gen_range(1..=4))).collect()
}

/// A g×(n−g) matrix of small integers.
pub fn random_a_matrix<R: Rng>(rng: &mut R, g: usize, n: usize) -> Vec<Vec<Rat>> {
    (0..g).map(|_| (0..n - g).map(|_| small_rat(rng, 3)).collect()).collect()
}

/// A random g-subset of {1..n}, sorted.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, g: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, n, g)
        .into_iter()
        .map(|i| i + 1)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// A cochain with each basis coefficient nonzero with probability `density`.
pub fn random_cochain<R: Rng>(rng: &mut R, basis: &CochainBasis, density: f64) -> Cochain {
    let mut v: SparseVec = Vec::new();
    for i in 0..basis.len() {
        if rng.gen_bool(density) {
            v.push((i, Rat::from_int(nonzero_int(rng, 3))));
        }
    }
    basis.from_vector(&v)
}

pub fn random_gauge<R: Rng>(rng: &mut R, e: &Arc<EWAlgebra>, order: usize, density: f64) -> GaugeTransform {
    let mut f = GaugeTransform::identity(e.clone(), order);
    for k in 2..order {
        let basis = CochainBasis::new(e, k, 1 - k as i32);
        f.set_f(k, random_cochain(rng, &basis, density));
    }
    f
}

/// δ(x) for random x plus a random combination of cocycles in the cached
/// complement, at arity k and internal degree 2−k.
pub fn random_cocycle<R: Rng>(rng: &mut R, norm: &Normalizer, k: usize, density: f64) -> Cochain {
    let e = norm.algebra();
    let slot = norm.slot(k);
    let x = random_cochain(rng, &slot.gauge_basis, density);
    let mut out = apply_differential(e, &x).expect("well-formed");
    if out.is_zero() {
        out = Cochain::zero(k, 2 - k as i32);
    }
    // Cocycles inside K are the kernel of δ restricted to K.
    let kb = slot.complement_basis();
    if kb.is_empty() {
        return out;
    }
    let cod = CochainBasis::new(e, k + 1, 2 - k as i32);
    let cols: Vec<SparseVec> =
        kb.iter().map(|c| cod.to_vector(&apply_differential(e, c).expect("well-formed")).expect("in basis")).collect();
    let mut triplets = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col {
            triplets.push((*i, j, v.clone()));
        }
    }
    let m = ExactMatrix::from_triplets(cod.len(), kb.len(), triplets);
    for z in m.kernel_basis().basis() {
        let c = small_rat(rng, 2);
        for (j, zj) in z.iter().enumerate() {
            if !zj.is_zero() {
                out.add_scaled(&kb[j], &(&c * zj));
            }
        }
    }
    out
}

/// A defect-free A_N structure: random classes at every order, completed
/// order by order, then moved by a random gauge. Returns `None` when an
/// obstruction is hit.
pub fn random_structure<R: Rng>(rng: &mut R, norm: &Normalizer, order: usize, density: f64) -> Option<AnStructure> {
    let e = norm.algebra().clone();
    let mut m = AnStructure::trivial(e.clone(), 2);
    for k in 3..=order {
        let next = match extend_step(&m).ok()? {
            Extension::Extended { next, .. } => next,
            Extension::Obstructed { .. } => return None,
        };
        let next = next.plus(&random_cocycle(rng, norm, k, density));
        m = m.extended(next);
    }
    let f = random_gauge(rng, &e, order, density);
    Some(gauge_act(&f, &m))
}

/// A random sparse vector of length `n` (for linear algebra tests).
pub fn random_sparse<R: Rng>(rng: &mut R, n: usize, density: f64) -> SparseVec {
    let mut v = Vec::new();
    for i in 0..n {
        if rng.gen_bool(density) {
            v.push((i, small_rat(rng, 5)));
        }
    }
    sparse::normalize(v)
}
