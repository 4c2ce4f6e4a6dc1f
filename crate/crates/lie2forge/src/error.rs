use thiserror::Error;

/// Library-wide error type. Verification *failures* are not errors — they are
/// report entries; errors signal misuse (wrong chart, wrong degrees, bad input
/// files) or broken construction-time invariants.
#[derive(Debug, Error)]
pub enum Error {
    #[error("chart mismatch: expected `{expected}`, got `{got}`")]
    ChartMismatch { expected: String, got: String },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("degree violation: {0}")]
    DegreeViolation(String),
    #[error("mixed variance: {0}")]
    MixedVariance(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form is not descendable along the source map: {0}")]
    NotDescendable(String),
    #[error("input is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("construction invariant failed in {check}: {witness}")]
    InvariantFailure { check: String, witness: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("cannot parse rational literal `{0}`")]
    BadRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
