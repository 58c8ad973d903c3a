//! Row-column arrays: parameter arithmetic, unordered triple arrays and triple arrays.

mod params;
mod ta;
mod uta;

pub use params::{admissible_up_to_rows, params_for, scan_quad_transpose, ArrayParams, QuadScan};
pub use ta::TripleArray;
pub use uta::{ResolutionWitness, Uta};
