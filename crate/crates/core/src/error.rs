use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invariants undefined for the trivial group")]
    TrivialGroup,
    #[error("invalid group literal {0:?}")]
    GroupLiteral(String),
    #[error("invariant factors {0:?} do not form a divisibility chain")]
    NotChain(Vec<u64>),
    #[error("group order overflows 64 bits")]
    OrderOverflow,
    #[error("relations do not present a finite group")]
    InfiniteGroup,
    #[error("coordinates {coords:?} are not an element of {group}")]
    InvalidElement { coords: Vec<u64>, group: String },
    #[error("operands belong to different groups")]
    AmbientMismatch,
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("no bicyclic decomposition: the group is cyclic")]
    NoBicyclicDecomposition,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{u} is not a unit at {p}")]
    NotUnit { u: i64, p: u64 },
    #[error("invalid local component: {0}")]
    InvalidComponent(String),
    #[error("not surjective")]
    NotSurjective,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("wrong group family: {0}")]
    WrongFamily(String),
    #[error("zero numerator in pairing element")]
    ZeroNumerator,
    #[error("at least 3 data points are required, got {0}")]
    TooFewPoints(usize),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
