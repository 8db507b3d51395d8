use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reasons a PGM/PPM file could not be decoded.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("unsupported magic number {0:?} (expected P5 or P6)")]
    UnsupportedMagic(String),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("max value must be 255, found {0}")]
    MaxValue(u32),
    #[error("truncated payload: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Codec(#[from] CodecError),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("key {name} = {value} outside the open interval ({low}, {high})")]
    KeyRange {
        name: &'static str,
        value: f64,
        low: f64,
        high: f64,
    },

    #[error("cannot parse key {name} from {text:?}")]
    KeyParse { name: &'static str, text: String },

    #[error("{width}x{height} image is not divisible into {block}x{block} blocks")]
    NotDivisible {
        width: usize,
        height: usize,
        block: usize,
    },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("expected a single-channel image, got {0} channels")]
    NotSingleChannel(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("correlation undefined: {0}")]
    ZeroVariance(&'static str),

    #[error("size mismatch: permutation covers {perm} positions, grid covers {grid}")]
    SizeMismatch { perm: usize, grid: usize },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
