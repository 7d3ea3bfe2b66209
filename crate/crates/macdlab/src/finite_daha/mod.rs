//! The standard representation of the double affine Hecke algebra on
//! `Q(q, t)[x_1, ..., x_n]`.

mod idempotent;
mod nonsym;
mod ops;
mod poly;
mod relations;

pub use idempotent::{epsilon, epsilon_defining_sum, omega_symmetrizer};
pub use nonsym::{e_eigensolve, e_hhl, e_intertwiner, intertwine, weight, FiniteWeight};
pub use ops::{cherednik_y, deformed_y, demazure_lusztig, demazure_lusztig_inv, omega, omega_inv, rho};
pub(crate) use ops::{t_inv_raw, t_raw};
pub use poly::FinitePoly;
pub use relations::{check_relations, RelationFailure};
