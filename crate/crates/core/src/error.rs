use thiserror::Error;

/// Errors raised while building, analysing or classifying a Tonnetz.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TonnetzError {
    #[error("invalid triad shape: {0}")]
    InvalidShape(String),

    #[error("modulus mismatch: Z/{left} vs Z/{right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("degenerate simplex: {0}")]
    DegenerateSimplex(String),

    #[error("{0} is not part of the complex")]
    NotFound(String),

    #[error("invalid flip: {0}")]
    InvalidFlip(String),

    #[error("invalid operation: {0}")]
    InvalidOperation(String),

    #[error("not a surface: {0}")]
    NotASurface(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("unclassifiable component: {0}")]
    Unclassifiable(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("wrong case: {0}")]
    WrongCase(String),

    #[error("invalid assembly: {0}")]
    InvalidAssembly(String),

    #[error("malformed document: {0}")]
    Malformed(String),
}

pub type Result<T, E = TonnetzError> = std::result::Result<T, E>;
