use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cell {cell} has a smaller filtration value than one of its faces")]
    NonMonotoneFiltration { cell: usize },

    #[error("cell {cell} references a missing face or a face of the wrong dimension")]
    DanglingBoundary { cell: usize },

    #[error("degree {degree}: expected {expected} essential classes, found {got}")]
    EssentialCountMismatch {
        degree: usize,
        expected: usize,
        got: usize,
    },

    #[error("linear size {got} is too small (need at least {min})")]
    SizeTooSmall { min: usize, got: usize },

    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),

    #[error("{dim}-simplex count {got} disagrees with the Stirling count {expected}")]
    CliqueCountMismatch {
        dim: usize,
        expected: usize,
        got: usize,
    },

    #[error("truncation radius {0} must be below 0.25")]
    RadiusTooLarge(f64),

    #[error("covariance spectrum is not positive semi-definite (relative eigenvalue {min_eigenvalue:e})")]
    SpectrumNotPsd { min_eigenvalue: f64 },

    #[error("no sign change found on [{lo}, {hi}]")]
    NoBracketsFound { lo: f64, hi: f64 },

    #[error("expected {expected} interior zeros of the expected EC curve, found {got}")]
    ZeroCountMismatch { expected: usize, got: usize },

    #[error("Betti curves of degrees {degree} and {} never cross", .degree - 1)]
    BettiCrossingNotFound { degree: usize },

    #[error("births cover {births} degrees but the zero set has {zeros} zeros")]
    DegreeMismatch { births: usize, zeros: usize },

    #[error("no valid trials for degree {degree}")]
    NoValidTrials { degree: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", .path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{}: {source}", .path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
