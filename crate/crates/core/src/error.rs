use thiserror::Error;

/// Errors raised by the engine. Verdicts that are merely negative (a module
/// that is not free, an inequality that fails) are reported in result types,
/// not here.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a complex: d∘d is nonzero on basis vector {witness} of degree {degree}")]
    NotAComplex { degree: usize, witness: usize },
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("not a short exact sequence in degree {degree}: {reason}")]
    NotShortExact { degree: usize, reason: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid Lie algebra: {0}")]
    InvalidLie(String),
    #[error("structure fails the operator identities: {0}")]
    AxiomsFailed(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
