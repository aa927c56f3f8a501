use thiserror::Error;

/// Source location of a parse error, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),

    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{location}: {message}")]
    Parse { location: Location, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration refused: {count} interpretations exceed the bound of {bound}")]
    EnumerationBound { count: u128, bound: u128 },

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("cannot extract program from `{program}`: {reason}")]
    Extraction { program: String, reason: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("replay mismatch at record {record}: {message}")]
    Replay { record: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
