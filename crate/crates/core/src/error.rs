use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("unsupported maxval {0} (only 255 is supported)")]
    UnsupportedMaxval(u32),

    #[error("truncated pixel data: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("wrong sample domain: expected {expected}, found {found}")]
    WrongDomain {
        expected: &'static str,
        found: &'static str,
    },

    #[error("expected {expected} plane(s), found {found}")]
    PlaneCount { expected: usize, found: usize },

    #[error("invalid dimensions: {0}")]
    Dimensions(String),

    #[error("logo must be 32x32, found {width}x{height}")]
    LogoShape { width: usize, height: usize },

    #[error("invalid logo content: {0}")]
    LogoContent(String),

    #[error("invalid watermark bit {0}")]
    InvalidBit(u8),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("benchmark produced no results: {0}")]
    EmptyRun(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad user input (files, parameters, configs)
    /// rather than by a failure inside the toolkit.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::EmptyRun(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
