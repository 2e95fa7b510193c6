use thiserror::Error;

/// Broad classes of failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed or inconsistent input data.
    Input,
    /// The algebra failed a Koszul or AS-regularity check.
    Certification,
    /// The automorphism or derivation does not respect the relations.
    Admissibility,
    /// An identity guaranteed by the theory failed: an engine bug.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Koszul complex not exact at homological degree {homological}, internal degree {internal}: {detail}")]
    CertificationFailure { homological: usize, internal: usize, detail: String },

    #[error("algebra is not AS-regular: {0}")]
    NotAsRegular(String),

    #[error("automorphism matrix is not invertible")]
    NotInvertible,

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("twist equation has a {kernel_dim}-dimensional solution space")]
    NonUniqueTwist { kernel_dim: usize },

    #[error("case precondition violated: {0}")]
    CasePreconditionViolated(String),

    #[error("sequence pair stage {stage}: right-tower system has no solution for basis vector {basis_index}")]
    TowerNoSolution { stage: usize, basis_index: usize },

    #[error("sequence pair stage {stage}: left map leaves V⊗W_{stage}")]
    LeftImageEscape { stage: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::DimensionMismatch { .. }
            | Error::OutOfRange { .. }
            | Error::InvalidInput(_)
            | Error::Singular
            | Error::NoSolution
            | Error::CasePreconditionViolated(_) => ErrorCategory::Input,
            Error::CertificationFailure { .. } | Error::NotAsRegular(_) | Error::NonUniqueTwist { .. } => {
                ErrorCategory::Certification
            }
            Error::NotInvertible | Error::NotAdmissible(_) => ErrorCategory::Admissibility,
            Error::TowerNoSolution { .. } | Error::LeftImageEscape { .. } | Error::Invariant(_) => {
                ErrorCategory::Internal
            }
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
