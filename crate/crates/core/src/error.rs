use std::io;

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: BigInt, divisor: BigInt },

    /// c ∈ {2, 4, 6}: feasible for infinitely many q, so there is no finite bound.
    #[error("c = {0} is feasible for infinitely many q; no finite bound exists")]
    InfiniteFamily(BigInt),

    #[error("c = {0} is feasible for infinitely many q; an explicit limit is required")]
    MissingLimit(BigInt),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("unknown family rule `{0}`")]
    UnknownFamily(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid range `{0}`")]
    InvalidRange(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
