use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {source_vertex} -> {target} is a self-loop")]
    SelfLoop { source_vertex: usize, target: usize },
    #[error("source vertex {0} has no kinetic complex")]
    MissingKineticComplex(usize),
    #[error("unknown species `{0}`")]
    UnknownSpecies(String),
    #[error("species `{0}` declared twice")]
    DuplicateSpecies(String),
    #[error("edge {source_vertex} -> {target} declared twice")]
    DuplicateEdge { source_vertex: usize, target: usize },
    #[error("rate symbol `{0}` used for more than one edge")]
    DuplicateRateSymbol(String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(usize),
    #[error("vertex {0} is referenced but not declared")]
    UnknownVertex(usize),
    #[error("vertex ids must be 1..{expected}; vertex {missing} is missing")]
    MissingVertex { expected: usize, missing: usize },
    #[error("invalid linear combination `{0}`")]
    InvalidComplex(String),

    #[error("the reaction graph is not weakly reversible")]
    NotWeaklyReversible,

    #[error("matrix has rank {actual}, expected {expected}")]
    RankDeficient { expected: usize, actual: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rate constants are required: {0}")]
    RatesRequired(String),
    #[error("missing rate for symbol `{0}`")]
    MissingRate(String),
    #[error("unknown rate symbol `{0}`")]
    UnknownRateSymbol(String),
    #[error("rate constant for `{0}` must be strictly positive")]
    NonPositiveRate(String),
    #[error("complex balancing equilibria do not exist for these rate constants")]
    NoSolution,
    #[error("expected {expected} values, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("values must be strictly positive")]
    NonPositiveValue,

    #[error("ambient dimension {0} exceeds the enumeration limit of 12")]
    AmbientTooLarge(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("state has a non-positive component at index {0}")]
    NonPositiveState(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
