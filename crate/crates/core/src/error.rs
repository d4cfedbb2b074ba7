use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("k must be nonzero (k = 0 makes k²+4 a perfect square)")]
    ZeroK,
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(BigInt),
    #[error("{0} is not a positive non-square integer")]
    SquareRadicand(BigInt),
    #[error("quadratic field mismatch: √{0} vs √{1}")]
    FieldMismatch(BigInt, BigInt),
    #[error("division by zero in quadratic field")]
    DivisionByZero,
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series order must be positive")]
    EmptySeries,
    #[error("series has zero constant term and no reciprocal")]
    ZeroConstantTerm,
    #[error("prefix too short: need {needed} terms, got {got}")]
    PrefixTooShort { needed: usize, got: usize },
    #[error("index {0} is outside the identity's domain")]
    IndexOutOfDomain(u64),
    #[error("closed-form sum denominator r²+kr−k−2r vanishes for k={k}, r={r}")]
    DegenerateDenominator { k: i64, r: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("empty grid range")]
    EmptyRange,
}
