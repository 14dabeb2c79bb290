//! Fixtures shared by the benchmarks.

use amoduli::linalg::{ExactMatrix, Rat};
use amoduli::quiver::{build_ew, EWAlgebra, SubspaceW};
use amoduli::random::{rng, small_rat};
use rand::Rng;

/// A dense random matrix with small rational entries, about `density` nonzero.
pub fn random_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> ExactMatrix {
    let mut r = rng(seed);
    let dense: Vec<Vec<Rat>> = (0..rows)
        .map(|_| (0..cols).map(|_| if r.gen_bool(density) { small_rat(&mut r, 9) } else { Rat::zero() }).collect())
        .collect();
    ExactMatrix::from_dense_with_cols(&dense, cols)
}

/// E_W for W = 0 in k^n, g = n.
pub fn cusp_algebra(n: usize) -> EWAlgebra {
    build_ew(&SubspaceW::zero(n))
}

/// E_W for the diagonal line in k^2.
pub fn diagonal_algebra() -> EWAlgebra {
    build_ew(&SubspaceW::from_rows(2, &[vec![Rat::one(), Rat::one()]]).expect("rank one"))
}
