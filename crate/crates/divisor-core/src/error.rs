use thiserror::Error;

/// Errors produced by ring construction, arithmetic and the decision procedures.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ring context mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("ring must have at least one variable")]
    EmptyRing,

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("variable index {index} out of range for a ring with {count} variables")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("operation requires a non-unit defining equation (h(0) = 0)")]
    UnitInput,

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("generator is not a monomial: {0}")]
    NonMonomialGenerator(String),

    #[error("ideals must share a monomial ordering for this operation")]
    OrderingMismatch,

    #[error("divisor components share a common factor")]
    CommonFactor,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("Hilbert-Samuel function did not stabilize below degree {0}")]
    NonStabilized(u64),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True when the error signals an exhausted resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap(_))
    }
}
