use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group order {0}: must be at least 1")]
    InvalidOrder(i64),

    #[error("invalid invariant factor {0}: every factor must be at least 2")]
    InvalidFactor(i64),

    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    #[error("{what} of size {actual} exceeds the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("invalid connection set: {reason} ({element})")]
    ConnectionSet { element: String, reason: &'static str },

    #[error("order {0} must be odd")]
    EvenOrder(u64),

    #[error("permutations have mismatched degrees {0} and {1}")]
    DegreeMismatch(usize, usize),

    #[error("transitivity on edges or arcs is undefined for an edgeless graph")]
    UndefinedTransitivity,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// True for errors raised by a configured size cap.
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }
}
