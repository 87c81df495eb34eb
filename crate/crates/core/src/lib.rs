//! Numerical function theory for entire slice monogenic functions of
//! proximate order.

// `!(x > 0.0)` guards deliberately reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cauchy;
#[cfg(feature = "cli")]
pub mod cli;
pub mod clifford;
pub mod config;
pub mod error;
pub mod growth;
pub mod numeric;
pub mod operators;
pub mod proximate;
pub mod report;
pub mod series;
pub mod suites;
pub mod superosc;

pub use error::{Error, Result};
