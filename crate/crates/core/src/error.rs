use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    ZeroDegree(u32),
    #[error("field of size {p}^{k} exceeds the supported bound of {limit}")]
    FieldTooLarge { p: u64, k: u32, limit: u64 },
    #[error("zero has no multiplicative order or inverse")]
    ZeroElement,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("characteristic {0} is not allowed here")]
    BadCharacteristic(u64),
    #[error("invalid group parameters: {0}")]
    InvalidGroup(String),
    #[error("cannot parse group descriptor {input:?}: {reason}")]
    Descriptor { input: String, reason: String },
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("value {0} is below the allowed minimum")]
    OutOfRange(u64),
    #[error("table import failed: {0}")]
    Table(String),
    #[error("report decode failed: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
