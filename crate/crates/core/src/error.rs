use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad category of a failure, used by front ends to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Invalid parameter or argument.
    Usage,
    /// Malformed or unreadable input data.
    Data,
    /// Numerically degenerate input (zero dispersion, too-small classes).
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite feature value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("at least two classes are required, found {0}")]
    SingleClass(usize),

    #[error("class `{level}` has {size} observation(s); {required} required")]
    SmallClass {
        level: String,
        size: usize,
        required: usize,
    },

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("no closed-form oracle for this design: {0}")]
    NoOracle(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("cannot parse `{value}` as a number at row {row}, column {column}")]
    ParseCell { row: usize, column: String, value: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::InvalidParameter(_) | Error::NoOracle(_) => ErrorCategory::Usage,
            Error::EmptyInput
            | Error::DimensionMismatch(_)
            | Error::NonFinite { .. }
            | Error::Csv(_)
            | Error::UnknownColumn(_)
            | Error::ParseCell { .. }
            | Error::Io(_) => ErrorCategory::Data,
            Error::SingleClass(_) | Error::SmallClass { .. } | Error::Degenerate(_) | Error::Consistency(_) => {
                ErrorCategory::Numeric
            }
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        let msg = e.to_string();
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => Error::Csv(msg),
        }
    }
}
