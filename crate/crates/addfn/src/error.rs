//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A sieve or table limit is out of the supported range.
    #[error("capacity: {0}")]
    Capacity(String),

    /// An argument violates an operation's precondition.
    #[error("domain: {0}")]
    Domain(String),

    /// A sieve/segment configuration cannot serve the requested range.
    #[error("configuration: {0}")]
    Configuration(String),

    /// The function is degenerate for the requested statistic (B_g(X) = 0).
    #[error("degenerate function: {0}")]
    Degenerate(String),

    /// A real-only operation was invoked with a complex-valued function.
    #[error("type: {0} requires a real-valued function")]
    ComplexValued(&'static str),

    /// The prime-power rule is undefined at the named point.
    #[error("evaluation: rule undefined at p^k = {p}^{k}")]
    Evaluation { p: u64, k: u8 },

    /// A stated inequality precondition fails; the message spells it out.
    #[error("precondition: {0}")]
    Precondition(String),

    /// A numeric quantity left its mathematical domain (e.g. a nonpositive
    /// Euler factor).
    #[error("numeric domain: {0}")]
    NumericDomain(String),

    #[error("parse: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for precondition/usage errors,
    /// 3 for numeric-domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NumericDomain(_) => 3,
            _ => 2,
        }
    }
}
