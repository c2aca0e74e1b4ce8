use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: duplicate row {row}")]
    DuplicateRow { line: usize, row: String },

    #[error("{0}")]
    Format(String),

    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("index {index} out of range for width {width}")]
    IndexOutOfRange { index: usize, width: usize },

    #[error("{what} = {value} exceeds the exact-computation limit {limit}")]
    ExactLimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("no specifying set of size <= {budget} exists")]
    Overbudget { budget: usize },

    #[error("specifying set of size {size} exceeds the declared bound {bound}")]
    SpecSetTooLarge { size: usize, bound: usize },

    #[error("oracle answers eliminated every candidate row")]
    InconsistentOracle,

    #[error("gcd is not unique: {count} maximal common descendants")]
    MultipleMaximal { count: usize },

    #[error("domain of {points} points exceeds the limit {limit}")]
    DomainTooLarge { points: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
