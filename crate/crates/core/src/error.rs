use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid crystal parameters: {0}")]
    InvalidParams(String),

    #[error("pattern has wrong shape: expected {expected_rows} rows of {expected_cols} entries, found {found}")]
    DimensionMismatch {
        expected_rows: usize,
        expected_cols: usize,
        found: String,
    },

    #[error("negative entry {value} at (p={p}, q={q})")]
    NegativeEntry { p: usize, q: usize, value: i64 },

    /// A monotone staircase through the grid sums past the level bound.
    /// `witness` lists the `(p, q)` cells of one such staircase.
    #[error("staircase sum {sum} exceeds bound {bound} along {witness:?}")]
    PathSumExceeded {
        sum: u64,
        bound: u32,
        witness: Vec<(usize, usize)>,
    },

    #[error("size limit of {limit} elements exceeded")]
    SizeLimitExceeded { limit: usize },

    #[error("color {l} is out of range for this operation: {reason}")]
    IndexOutOfRange { l: usize, reason: &'static str },

    #[error("tensor factors live over different ranks ({0} vs {1})")]
    RankMismatch(usize, usize),

    #[error("expected a tensor with {expected} factors, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("element is not classically highest weight")]
    NotHighestWeight,

    #[error("dominant weight has level {found}, expected {expected}")]
    LevelMismatch { expected: u32, found: u32 },

    #[error("oracle failure: {0}")]
    OracleFailure(String),

    #[error("energy recursion is inconsistent: {0}")]
    InconsistentRecursion(String),

    #[error("rank-2 regularity violated for colors {colors:?}: {detail}")]
    ReportedViolation {
        colors: (usize, usize),
        component: Vec<usize>,
        detail: String,
    },

    #[error("malformed input: {0}")]
    Parse(String),
}
