use thiserror::Error;

/// Errors raised by the numerical kernels and file readers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Source and target units do not share a convertible dimension.
    #[error("cannot convert {from} to {to}")]
    Conversion { from: String, to: String },

    /// Adaptive quadrature gave up before reaching the requested tolerance.
    #[error(
        "quadrature did not converge: estimated error {achieved:e} exceeds tolerance {requested:e}"
    )]
    Quadrature { achieved: f64, requested: f64 },

    /// Input carried no information (e.g. a constant trajectory).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Gaussian timescale fit could not be performed.
    #[error("fit error: {0}")]
    Fit(String),

    /// Malformed text input.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {msg}")]
    Io {
        kind: std::io::ErrorKind,
        msg: String,
    },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io {
            kind: e.kind(),
            msg: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
