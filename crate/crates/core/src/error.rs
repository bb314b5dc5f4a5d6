use thiserror::Error;

/// Everything that can go wrong while building or querying a model.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed presentation document: {0}")]
    Malformed(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("non-homogeneous relation {lhs} = {rhs} (lengths {lhs_len} vs {rhs_len})")]
    NonHomogeneous {
        lhs: String,
        rhs: String,
        lhs_len: usize,
        rhs_len: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("length bound exceeded: need length {needed}, table holds {bound}")]
    BoundExceeded { needed: usize, bound: usize },

    #[error("enumerated table is not cancellative: {0}")]
    NotCancellative(String),

    #[error("controlled map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("fiber over {target} cannot be certified complete: {reason}")]
    IncompleteFiber { target: String, reason: String },

    #[error("inconclusive at this bound: {0}")]
    Inconclusive(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("power iteration did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error("identity check failed: {name}: {witness}")]
    CheckFailed { name: String, witness: String },

    #[error("degree {degree} exceeds the {available} kernel coefficients provided")]
    DegreeOverflow { degree: usize, available: usize },

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("scalar {0} is not unimodular")]
    NotUnimodular(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
