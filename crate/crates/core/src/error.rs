use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix dimension must be at least 1.
    InvalidDimension,
    /// Input is not square, rows are ragged, or two operands disagree in size.
    Shape { expected: usize, found: usize },
    NonFinite { row: usize, col: usize },
    /// An element that must act as a repetition count is not integer-valued.
    NotInteger { row: usize, col: usize, value: f64 },
    /// Mean of nonzero entries requested on an all-zero matrix.
    UndefinedMean,
    InvalidParameter(&'static str),
    EmptySample,
    InsufficientData { distinct_sizes: usize },
    /// Fit input outside the domain of the logarithm.
    NonPositive { index: usize },
    DegenerateFit,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension => write!(f, "matrix dimension must be at least 1"),
            Error::Shape { expected, found } => {
                write!(f, "shape mismatch: expected {expected}, found {found}")
            }
            Error::NonFinite { row, col } => {
                write!(f, "non-finite value at ({row}, {col})")
            }
            Error::NotInteger { row, col, value } => {
                write!(f, "repetition factor at ({row}, {col}) is not an integer: {value}")
            }
            Error::UndefinedMean => write!(f, "mean of nonzero entries is undefined: matrix is all zeros"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::EmptySample => write!(f, "no samples"),
            Error::InsufficientData { distinct_sizes } => write!(
                f,
                "power-law fit needs at least 3 distinct sizes, got {distinct_sizes}"
            ),
            Error::NonPositive { index } => {
                write!(f, "point {index} has a nonpositive coordinate")
            }
            Error::DegenerateFit => write!(f, "regression is degenerate: all addition counts are zero"),
        }
    }
}

impl core::error::Error for Error {}
