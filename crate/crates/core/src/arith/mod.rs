//! Exact scalars and linear algebra.

mod cyclotomic;
mod intrank;
mod linalg;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicField, FieldRef, Scalar};
pub use intrank::{clear_denominators, make_primitive, IntegerEchelon};
pub use linalg::{
    is_zero_vec, left_kernel, rank, right_kernel, rref, unit_vec, zero_vec, Bilinear, Subspace,
};
