use thiserror::Error;

/// Errors raised by the library.
///
/// The variants group into validation problems (bad shapes, missing data,
/// malformed input), degeneracies of the geometric input, and integrity
/// failures of embedded data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("series is not invertible: zero constant term")]
    NonInvertible,
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("degenerate input: {0}")]
    Degeneracy(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("ambiguous recovery: {0}")]
    Ambiguous(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("data integrity failure: {0}")]
    DataIntegrity(String),
    #[error("configuration error: {0}")]
    Configuration(String),
}

impl Error {
    /// True for errors caused by degenerate geometry or corrupted data,
    /// as opposed to malformed requests.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::Degeneracy(_)
                | Error::Ambiguous(_)
                | Error::Pole(_)
                | Error::DataIntegrity(_)
                | Error::Unsupported(_)
                | Error::Inconsistent(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
