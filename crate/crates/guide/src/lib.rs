//! Book chapters compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/qt-field.md")]
pub mod qt_field {}

#[doc = include_str!("../../../book/src/combinatorics.md")]
pub mod combinatorics {}

#[doc = include_str!("../../../book/src/symmetric-functions.md")]
pub mod symmetric_functions {}

#[doc = include_str!("../../../book/src/finite-daha.md")]
pub mod finite_daha {}

#[doc = include_str!("../../../book/src/almost-symmetric.md")]
pub mod almost_symmetric {}

#[doc = include_str!("../../../book/src/stable-limit.md")]
pub mod stable_limit {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
