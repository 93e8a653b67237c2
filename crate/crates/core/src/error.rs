use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("required input file is missing: {}", path.display())]
    MissingFile { path: PathBuf },

    #[error("{file}: parse error at byte offset {offset}: {message}")]
    Parse {
        file: String,
        offset: u64,
        message: String,
    },

    #[error("empty gloss for synset {synset}")]
    EmptyGloss { synset: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid data: {0}")]
    Data(String),

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn data(message: impl Into<String>) -> Self {
        Error::Data(message.into())
    }

    pub(crate) fn config(message: impl Into<String>) -> Self {
        Error::Config(message.into())
    }

    /// Short machine-readable code, used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MissingFile { .. } | Error::Config(_) => "config",
            Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => "parse",
            Error::EmptyGloss { .. } | Error::Data(_) | Error::UndefinedCorrelation(_) => {
                "validation"
            }
            Error::Io { .. } => "io",
        }
    }
}
