use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(BigInt),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The polynomial is reducible over the rationals; `witness` is a proper factor.
    #[error("polynomial {poly} is reducible, witness factor {witness}")]
    Reducible { poly: String, witness: String },

    /// The computation is outside the supported scope and is declined explicitly.
    #[error("refused: {0}")]
    Refused(String),

    #[error("cannot parse polynomial {input:?}: {msg}")]
    Parse { input: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn refuse<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Refused(msg.into()))
}
