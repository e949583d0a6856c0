use thiserror::Error;

/// Errors raised by the numerical core and the command layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds {limit:.3e})")]
    NotHermitian { defect: f64, limit: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e} below cutoff {cutoff:.3e})")]
    NotPsd { eigenvalue: f64, cutoff: f64 },

    #[error("the weight operator A must be nonzero")]
    ZeroA,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not A-compatible: it maps null(A) outside null(A), so its A-adjoint does not exist and its A-numerical radius is infinite")]
    NotCompatible,

    #[error("operators live in different semi-Hilbert spaces")]
    SpaceMismatch,

    #[error("joint radius of a {0}-tuple is not supported (1 <= d <= 3)")]
    UnsupportedArity(usize),

    #[error("unknown sharpness case `{0}`")]
    UnknownCase(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),

    #[error("evaluation of {entry} failed: {source}")]
    EvaluationFailure {
        entry: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid instance: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
