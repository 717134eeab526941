use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element belongs to a different semigroup handle")]
    ForeignElement,
    #[error("operands live on different semigroup handles")]
    HandleMismatch,
    #[error("element index {index} out of range for a semigroup of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("empty semigroups are not supported")]
    EmptySemigroup,
    #[error("window size must be at least 1")]
    EmptyWindow,
    #[error("window of size {size} exceeds the semigroup's order {order}")]
    WindowTooLarge { size: usize, order: usize },
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("declared {what} element {index} does not satisfy its law")]
    BadDistinguished { what: &'static str, index: usize },
    #[error("partition is not a congruence: {0}")]
    NotCongruence(String),
    #[error("subset is not an ideal: {0}")]
    NotIdeal(String),
    #[error("map is not a surjective homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{what} requires a finite semigroup")]
    RequiresFinite { what: &'static str },
    #[error("{what} of {value} exceeds the configured guard {limit}")]
    GuardExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("operation is not supported on {0}")]
    Unsupported(String),
    #[error("shift fiber of {0} cannot be shown finite")]
    FiberNotFinite(String),
    #[error("certificate does not verify: {0}")]
    Unverified(String),
    #[error("polynomial degree must be at least 1")]
    ZeroDegree,
    #[error("no idempotent found: {0}")]
    NoIdempotent(String),
    #[error("group law fails: {0}")]
    GroupLaw(String),
    #[error("element {0} has no inverse")]
    MissingInverse(usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn guard(what: &'static str, value: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::GuardExceeded {
            what,
            value: value.into(),
            limit: limit.into(),
        }
    }
}
