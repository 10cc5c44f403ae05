use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),
    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("bad preset parameters: {0}")]
    BadParams(String),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("field contains non-finite values")]
    NonFinite,
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed artifact {path}: {reason}")]
    Format { path: PathBuf, reason: String },
    #[error("schema version mismatch: found {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("payload checksum mismatch for {0}")]
    ChecksumMismatch(PathBuf),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("empty distribution")]
    EmptyDistribution,
    #[error("field takes negative values (min {0:e})")]
    NegativeField(f64),
    #[error("domain is not a disk")]
    NotADisk,
    #[error("empty interval [{0}, {1}]")]
    EmptyInterval(f64, f64),
    #[error("convex ring has no clearance (gap {0:e})")]
    EmptyRing(f64),
    #[error("empty point set")]
    EmptySet,
    #[error("vorticity takes both signs (min {min:e}, max {max:e})")]
    SignViolation { min: f64, max: f64 },
    #[error("level {level} outside ({min}, {max}]")]
    LevelOutOfRange { level: f64, min: f64, max: f64 },
    #[error("no topology violation found")]
    NoViolationFound,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, reason: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
