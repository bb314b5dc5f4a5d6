//! Exact finite-dimensional models of semigroup operator algebras.
//!
//! The crate enumerates homogeneous monoids, builds the left regular
//! representation on graded truncations of ℓ²(P), compresses it to the
//! finite-dimensional divisor subspaces, models coactions coming from
//! controlled maps, and grades multiplier algebras of unitarily invariant
//! kernels by the circle action. Every identity it relies on is checked on
//! the truncations, exactly where the entries are 0/1.

pub mod cli;
pub mod coaction;
pub mod error;
pub mod fdapprox;
pub mod funcalg;
pub mod linrep;
pub mod monoid;

pub use error::{Error, Result};
pub use num_complex::Complex64;
