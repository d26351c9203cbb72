use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised when an operation's precondition is violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate seed (0, 0)")]
    DegenerateSeed,

    #[error("window length k must be at least 1")]
    EmptyWindow,

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("seed ({g0}, {g1}) reduces to (0, 0) modulo {m}")]
    DegenerateResidues { g0: BigInt, g1: BigInt, m: u64 },

    #[error("seed ({g0}, {g1}) does not have coprime entries")]
    NotCoprime { g0: BigInt, g1: BigInt },

    #[error("moduli {m1} and {m2} are not coprime")]
    NonCoprimeModuli { m1: u64, m2: u64 },

    #[error("invalid {name}: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("no window length up to {cap} could be certified modulo {m}")]
    SearchCapTooSmall { m: u64, cap: u64 },

    #[error("value {value} is too large for {context}")]
    TooLarge { value: BigInt, context: &'static str },

    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),

    #[error("{what}: expected {expected}, got {actual}")]
    Mismatch {
        what: &'static str,
        expected: String,
        actual: String,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
