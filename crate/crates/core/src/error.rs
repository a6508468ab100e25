use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("evaluation at pole")]
    EvaluationAtPole,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("rank parameter n must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("Casimir not invertible")]
    CasimirNotInvertible,
    #[error("generator not divisible")]
    GeneratorNotDivisible,
    #[error("invariant form not unique (solution space has dimension {0})")]
    InvariantFormNotUnique(usize),
    #[error("character inconsistent: {0}")]
    CharacterInconsistent(String),
    #[error("dimension mismatch in {context}: expected {expected}, computed {computed}")]
    DimensionMismatch { context: String, expected: usize, computed: usize },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
