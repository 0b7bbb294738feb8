use thiserror::Error;

/// Errors surfaced by the exact-arithmetic, lattice, and field layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not positive definite (leading principal minor {index} is not positive)")]
    NotPositiveDefinite { index: usize },

    #[error("matrix rows do not form a symmetric square matrix")]
    NotSymmetric,

    #[error("empty input where a nonempty list is required")]
    EmptyInput,

    #[error("entry must be positive, got {0}")]
    NonPositiveEntry(String),

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),

    #[error("L_(b,m) requires b > m, got b = {b}, m = {m}")]
    FormNotDefinite { b: String, m: usize },

    #[error("power products must be positive for comparison, got {0}")]
    NonPositiveValue(String),

    #[error("zero cannot be represented as a power product")]
    ZeroValue,

    #[error("non-integral rational power of a negative value")]
    NegativePow,

    #[error("cannot factor cofactor {0}; value is outside the supported smooth range")]
    UnfactoredCofactor(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("exponent overflow while combining factored values")]
    ExponentOverflow,

    #[error("interval precision exhausted at {bits} bits without separating the operands")]
    PrecisionExhausted { bits: u32 },

    #[error("enumeration node budget of {budget} nodes exceeded")]
    NodeBudgetExceeded { budget: u64 },

    #[error("rank {rank} exceeds the configured limit {limit} for this operation")]
    RankLimit { rank: usize, limit: usize },

    #[error("target vector has length {got}, lattice rank is {expected}")]
    TargetLength { expected: usize, got: usize },

    #[error("search box too small to certify the minimum (a minimizer touched the boundary)")]
    BoxTooSmall,

    #[error("analytic covering radius is not recorded for this lattice")]
    AnalyticMaxMissing,

    #[error("determinant gate failed: expected {expected}, got {got}")]
    DetMismatch { expected: String, got: String },

    #[error("invalid field descriptor: {0}")]
    InvalidField(String),

    #[error("conductor {0} is invalid here (need m >= 3 and m != 2 mod 4)")]
    InvalidConductor(u64),

    #[error("analytic maximum absent; thickness requires it")]
    TauNeedsAnalyticMax,

    #[error("unsupported input: {0}")]
    Unsupported(String),
}
