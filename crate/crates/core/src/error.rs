use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite sample value at grid index {index:?}")]
    NonFinite { index: Vec<usize> },

    #[error("grid shape mismatch: expected exponent {expected}, got {got}")]
    ShapeMismatch { expected: u32, got: u32 },

    #[error("scale m={m} not resolvable on a grid with exponent n={n}")]
    ScaleOutOfRange { m: u32, n: u32 },

    #[error("grid index {index} out of range (0..={max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "range-sum sandwich violated at m={m}: lower={lower}, count={count}, upper={upper}"
    )]
    SandwichViolation {
        m: u32,
        lower: f64,
        count: u64,
        upper: f64,
    },

    #[error("not enough scales: have {rows} rows, need at least {needed}")]
    TooFewScales { rows: usize, needed: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
