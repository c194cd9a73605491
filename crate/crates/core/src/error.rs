use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A configuration or input value is outside its valid domain.
    #[error("invalid value for `{key}`: {reason}")]
    InvalidParameter { key: &'static str, reason: String },

    /// Two cell sets built on different grids were combined.
    #[error("grid mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    GridMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("cell index {index} out of range for grid of {cells} cells")]
    CellOutOfRange { index: usize, cells: usize },

    #[error("network is empty")]
    EmptyNetwork,

    #[error("initial live coverage is empty (degenerate deployment)")]
    DegenerateDeployment,

    /// A caller broke an operation precondition (e.g. a dead sensor offered as candidate).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal invariant failed; indicates a bug.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(key: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            key,
            reason: reason.into(),
        }
    }
}
