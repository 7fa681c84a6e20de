use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 65536)")]
    BadModulus(u64),
    #[error("duplicate or empty variable name `{0}`")]
    BadVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("not a proper ideal")]
    NotProperIdeal,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("rings differ")]
    RingMismatch,
    #[error("rank requires a domain")]
    RequiresDomain,
    #[error("multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("frobenius exponent {0} exceeds the supported cap")]
    ExponentTooLarge(u32),
    #[error("alpha not injective: {0} annihilates alpha(1) modulo the relations")]
    AlphaNotInjective(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("k must be ≥ 1")]
    RelationTooShort,
    #[error("max_steps must be ≥ 1")]
    ZeroSteps,
    #[error("ideal must need ≥ 2 generators")]
    PrincipalIdeal,
    #[error("rank exceeds the minor cutoff of {0}")]
    MinorCutoff(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
