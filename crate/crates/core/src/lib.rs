//! Shuffle-compatible descent statistics and their kernels in the algebra of
//! quasisymmetric functions.
//!
//! The crate enumerates compositions and permutations, evaluates descent
//! statistics, computes shuffle products in the fundamental basis, and
//! verifies spanning sets and bases of the kernels `K^st` by exact rational
//! row reduction.

pub mod composition;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod qsym;
pub mod statistics;

pub use composition::{Composition, DescentSetN};
pub use error::{Error, Result};
pub use linalg::{Rational, RowBasis, SparseVector};
pub use qsym::{Basis, QSymElement};
pub use statistics::{Permutation, StatValue, StatisticId};
