use regz_exact::ExactError;
use thiserror::Error;

/// Errors raised while constructing or checking algebraic objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("matrix is not skew-invertible")]
    NotSkewInvertible,
    #[error("matrix is not a Hecke or involutive symmetry ({0})")]
    NotASymmetry(String),
    #[error("Jucys-Murphy element {k} has eigenvalues outside q^(2c), |c| < n")]
    SpectrumEscape { k: usize },
    #[error("neither block convention satisfies the reflection equation")]
    ConventionFailure,
    #[error("operator is not scalar on the submodule")]
    NotScalar,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<i64>),
    #[error("spectral values are not generic: {0}")]
    NotGeneric(String),
    #[error("projector rank {rank} for pattern {pattern}")]
    RankFailure { pattern: String, rank: usize },
    #[error("entry has a pole at q = 1: {0}")]
    PoleAtOne(String),
    #[error("axiom failure: {0}")]
    AxiomFailure(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
