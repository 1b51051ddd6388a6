use std::fmt;

/// Unified error type for the whole crate.
#[derive(Debug)]
pub enum Error {
    /// Two vectors that must share a dimension do not.
    Dimension { expected: usize, actual: usize },
    /// A column that must be normalized has zero (or non-positive) mass.
    ZeroSumColumn { column: usize },
    /// A configuration value violates its documented range.
    Config(String),
    /// A request that can never be satisfied (unknown name, c out of range, ...).
    InvalidRequest(String),
    /// A cluster lost all membership mass during a centroid update.
    DegenerateCluster { cluster: usize },
    /// Every restart of the solver failed for this cluster count.
    AllRestartsFailed { c: usize },
    /// The solver failed at every cluster count of a sweep.
    SolverFailedEverywhere,
    /// Two centroids coincide, so a separation-based score is undefined.
    IdenticalCentroids,
    /// A CSV cell or row could not be parsed.
    CsvFormat {
        row: usize,
        column: Option<usize>,
        message: String,
    },
    /// Fewer data points than the minimum the pipeline supports.
    TooFewPoints { found: usize },
    Io(std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { expected, actual } => {
                write!(f, "dimension mismatch: expected {expected}, got {actual}")
            }
            Error::ZeroSumColumn { column } => {
                write!(f, "column {column} has zero sum and cannot be normalized")
            }
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Error::InvalidRequest(msg) => write!(f, "invalid request: {msg}"),
            Error::DegenerateCluster { cluster } => {
                write!(f, "cluster {cluster} has zero total membership mass")
            }
            Error::AllRestartsFailed { c } => {
                write!(f, "all restarts failed for c = {c}")
            }
            Error::SolverFailedEverywhere => {
                write!(f, "the solver failed at every cluster count in the sweep")
            }
            Error::IdenticalCentroids => {
                write!(f, "two centroids coincide; separation is zero")
            }
            Error::CsvFormat {
                row,
                column,
                message,
            } => match column {
                Some(col) => write!(f, "csv format error at row {row}, column {col}: {message}"),
                None => write!(f, "csv format error at row {row}: {message}"),
            },
            Error::TooFewPoints { found } => {
                write!(f, "need at least 2 data points, found {found}")
            }
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
