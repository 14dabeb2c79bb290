//! Exact rational linear algebra.

mod matrix;
mod rat;
pub mod sparse;
mod subspace;

pub use matrix::{rank_of, ExactMatrix, ExactVector};
pub use rat::{common_denominator, Rat};
pub use sparse::{Echelon, SparseVec};
pub use subspace::{Splitting, Subspace};
