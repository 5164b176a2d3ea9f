//! Exact arithmetic substrate: dense matrices and binary forms over an exact field.

mod binary;
pub(crate) mod integer;
mod matrix;
mod poly;

pub use binary::{binary_gcd, is_squarefree, BinaryForm};
#[doc(hidden)]
pub use integer::Elimination;
pub use matrix::{dot, ff_rank, linsolve, normalize_last, nullspace, proportional, Matrix};
