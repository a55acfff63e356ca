use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field exponent must be positive")]
    ZeroExponent,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} is too small (need q >= 4)")]
    FieldTooSmall(u64),
    #[error("field order {0} is too large for the table representation")]
    FieldTooLarge(u64),
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: u64, n: u64 },
    #[error("invalid unit specification: {0}")]
    InvalidSpec(String),
    #[error("invalid prime {p}: {reason}")]
    InvalidPrime { p: u64, reason: String },
    #[error("h lies in the dihedralizer of g")]
    HInDihedralizer,
    #[error("PSL(2,{q}) has no element of order {p}")]
    NoElementOfOrderP { q: u64, p: u64 },
    #[error("group of order {order} exceeds the brute-force bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },
    #[error("inadmissible pair (q={q}, p={p}): {reason}")]
    InadmissiblePair { q: u64, p: u64, reason: String },
    #[error("three-point map: {0}")]
    ThreePointMap(String),
    #[error("not a group element: {0}")]
    InvalidElement(String),
    #[error("dimension {0} exceeds the numeric oracle limit")]
    DimensionTooLarge(usize),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed record: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
