use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not a parking function: {0}")]
    NotAParkingFunction(String),
    #[error("specification and order permutation do not fit together: {0}")]
    InconsistentPair(String),
    #[error("enumeration domain of {domain} tuples exceeds the size cap of {cap}")]
    SizeCapExceeded { domain: u128, cap: u128 },
    #[error("malformed forest: {0}")]
    MalformedForest(String),
    #[error("malformed colored tree: {0}")]
    MalformedTree(String),
    #[error("map requires {expected}, got a={a}, b={b}")]
    WrongColorParameters {
        expected: &'static str,
        a: u32,
        b: u32,
    },
    #[error("polynomial arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("empty sample")]
    EmptySample,
    #[error("bad distribution parameter: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "InvalidParams",
            Error::NotAParkingFunction(_) => "NotAParkingFunction",
            Error::InconsistentPair(_) => "InconsistentPair",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::MalformedForest(_) => "MalformedForest",
            Error::MalformedTree(_) => "MalformedTree",
            Error::WrongColorParameters { .. } => "WrongColorParameters",
            Error::ArityMismatch(..) => "ArityMismatch",
            Error::ParameterOutOfRange(_) => "ParameterOutOfRange",
            Error::EmptySample => "EmptySample",
            Error::BadParameter(_) => "BadParameter",
            Error::Parse(_) => "Parse",
        }
    }
}
