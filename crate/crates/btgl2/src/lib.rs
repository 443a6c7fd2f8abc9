//! Exact computations with finitely generated subgroups of GL(2) over
//! valued fields: actions on Bruhat-Tits trees, free-semigroup witness
//! extraction, and word-growth enumeration.
//!
//! The two supported coefficient fields are the rationals with p-adic
//! valuations and rational function fields over a prime field with
//! valuations at irreducible polynomials or at infinity. All arithmetic
//! is exact; no completions or floating approximations are used.

pub mod error;
pub mod field;
pub mod growth;
pub mod io;
pub mod matrix;
pub mod pingpong;
pub mod tree;
pub mod witness;

pub use error::{Error, Result};
