use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("duplicate value {value} at indices {first} and {second} (pass --break-ties-by-index to accept ties)")]
    DuplicateValue { value: f64, first: u32, second: u32 },

    #[error("invalid query {id}: {reason}")]
    InvalidQuery { id: usize, reason: String },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
