use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Moduli handed to the Chinese remainder theorem share a prime.
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("polynomial is not intersective: {0}")]
    NotIntersective(String),

    /// The effort bound ran out before a decision could be reached.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A configured size limit would be exceeded.
    #[error("limit exceeded: {0}")]
    Limit(String),

    /// An exact identity the theory guarantees failed to hold.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
