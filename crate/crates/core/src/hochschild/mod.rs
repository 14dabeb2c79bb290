//! Normalized Hochschild complex of E_W relative to its idempotents.
//!
//! Cochains take composable tuples of radical basis elements to E. Signs use
//! suspended degrees ‖x‖ = |x| − 1 and the differential is δ = [ms₂, ·].

mod cochain;
mod complex;

pub use cochain::{brace, gerstenhaber, ms2, sdeg, sign, Cochain, CochainJson, EntryJson, Key, Tuple};
pub use complex::{
    apply_differential, bidegree_cells, differential, differential_rank, hh_dim, vanishing_scan, BidegreeRow,
    BidegreeTable, CellDims, CochainBasis, ScanReport,
};
