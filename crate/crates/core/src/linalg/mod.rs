//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are indexed by composition index within one degree. No floating
//! point is used anywhere.

mod rational;
mod sparse;

pub use rational::Rational;
pub use sparse::{
    in_span, is_independent, rank, reduce, reduce_in_degree, rows_to_csv, spans_equal, Eliminator,
    RowBasis, SparseVector,
};
