//! Exact computation of non-symmetric Macdonald polynomials, their stable
//! limits as almost-symmetric functions, and the operators around them.

#![allow(clippy::needless_range_loop)]

pub mod almost_sym;
pub mod cli_verify;
pub mod combinatorics;
pub mod error;
pub mod finite_daha;
pub mod linalg;
pub mod qt_field;
pub mod stable_limit;
pub mod symfunc;

pub use error::{Error, Result};
pub use qt_field::RatQT;
