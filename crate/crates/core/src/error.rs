use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `|ad - bc - 1|` exceeded the construction tolerance.
    Determinant { deviation: f64 },
    /// `| |alpha|^2 + |beta|^2 - 1 |` exceeded the construction tolerance.
    NotUnitary { deviation: f64 },
    /// Requested spin beyond what a table or quadrature supports.
    BandlimitExceeded { two_j: u32, cap: u32 },
    /// Sample array does not match the grid it claims to live on.
    GridMismatch { expected: usize, found: usize },
    /// Grid parameters are out of range.
    InvalidGrid(&'static str),
    /// A dense grid would exceed the size cap.
    SizeExceeded { requested: usize, cap: usize },
    /// Operation needs off-grid evaluation but only samples are available.
    RequiresClosedForm,
    DimensionMismatch { left: usize, right: usize },
    NotHermitian { deviation: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Determinant { deviation } => {
                write!(f, "determinant deviates from 1 by {deviation:e}")
            }
            Error::NotUnitary { deviation } => {
                write!(f, "|alpha|^2 + |beta|^2 deviates from 1 by {deviation:e}")
            }
            Error::BandlimitExceeded { two_j, cap } => {
                write!(f, "two_j = {two_j} exceeds the cap {cap}")
            }
            Error::GridMismatch { expected, found } => {
                write!(f, "expected {expected} samples, found {found}")
            }
            Error::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Error::SizeExceeded { requested, cap } => {
                write!(f, "dense grid of {requested} points exceeds the cap {cap}")
            }
            Error::RequiresClosedForm => {
                write!(f, "operation needs a closed-form evaluator, not just samples")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (deviation {deviation:e})")
            }
        }
    }
}

impl core::error::Error for Error {}
