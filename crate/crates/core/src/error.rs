use std::path::PathBuf;

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("distribution needs at least 2 entries, got {0}")]
    TooFewClasses(usize),

    #[error("class index {index} out of range for {n} classes")]
    ClassOutOfRange { index: usize, n: usize },

    #[error("empty batch")]
    EmptyBatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("class {0} has no records")]
    MissingClass(usize),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid feature data: {0}")]
    InvalidFeatures(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("degenerate model: every class has zero likelihood")]
    DegenerateModel,

    #[error("data error: {0}")]
    Data(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("sweep point {point}: {source}")]
    SweepPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },
}

/// Coarse failure category, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Data,
    Numerical,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Data => 2,
            ErrorKind::Numerical => 3,
        }
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) => ErrorKind::Usage,
            Error::Data(_)
            | Error::Io { .. }
            | Error::Csv(_)
            | Error::Json(_)
            | Error::InvalidFeatures(_)
            | Error::MissingClass(_)
            | Error::EmptyBatch
            | Error::DimensionMismatch { .. } => ErrorKind::Data,
            Error::InvalidDistribution(_)
            | Error::TooFewClasses(_)
            | Error::ClassOutOfRange { .. }
            | Error::InvalidMatrix(_)
            | Error::Model(_)
            | Error::DegenerateModel => ErrorKind::Numerical,
            Error::SweepPoint { source, .. } => source.kind(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
