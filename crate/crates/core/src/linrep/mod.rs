//! The left regular representation of an enumerated monoid on graded
//! truncations of ℓ²(P), plus the sparse linear algebra it needs.
//!
//! `λ_p` maps the level-`L` truncation into the level-`L + |p|` truncation,
//! so no entry is ever cut off: every operator here is an exact block of
//! the infinite matrix.

mod norm;
mod operator;
mod regular;

pub use norm::{operator_norm, operator_norm_with, NormOptions};
pub use operator::{Space, SparseOperator, VectorInSpace};
pub use regular::{adjoint_hits, graded_space, lambda, lambda_adjoint, lambda_into, GradedBasis};

/// Kronecker product of two operators.
pub fn tensor_product(a: &SparseOperator, b: &SparseOperator) -> SparseOperator {
    a.kron(b)
}

/// `a ∘ b`.
pub fn compose(a: &SparseOperator, b: &SparseOperator) -> crate::Result<SparseOperator> {
    a.compose(b)
}
