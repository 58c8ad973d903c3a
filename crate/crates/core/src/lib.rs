//! Triple arrays, unordered triple arrays and the block designs behind them.
//!
//! All objects are 0-based: points, blocks, rows, columns and symbols are
//! indices starting at 0.

pub mod affine;
pub mod arrays;
pub mod canon;
pub mod catalog;
pub mod constructions;
pub mod design;
pub mod enumeration;
pub mod error;
pub mod exact_cover;
pub mod field;
pub mod geometry;
pub mod ordering;
mod text;

pub use arrays::{params_for, ArrayParams, TripleArray, Uta};
pub use design::{BlockDesign, Resolution, TwoDesignParams};
pub use error::{Error, Result};
