//! Exact computations with finite-dimensional G-graded algebras.
//!
//! An algebra is given by its graded Wedderburn–Malcev data: a list of
//! G-simple components `F^f H ⊗ M_r(F)` (twisted group algebra tensor a
//! matrix algebra with an elementary grading) plus a graded nilpotent
//! radical with explicit structure constants. From that the crate computes
//! the ordinary exponent of the identity component, the graded chain
//! exponent `exp_conj^G`, the explicit monomials `Λ` and `Ω` that realize
//! it, the e-stop census over all group elements, and checks the bound
//! `exp_conj^G(A) ≤ |G|² exp(A_e)`. A brute-force codimension oracle gives an
//! independent definition-level check of exponents on small algebras.

pub mod algebra;
pub mod arith;
pub mod cocycle;
pub mod codim;
pub mod error;
pub mod generators;
pub mod group;
pub mod gsimple;
pub mod instance;
pub mod proof;

pub use error::{Error, Result};
