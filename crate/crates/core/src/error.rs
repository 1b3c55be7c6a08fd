use std::path::PathBuf;

use thiserror::Error;

use crate::eval::EvalError;
use crate::features::FeatureError;
use crate::models::ModelError;
use crate::select::SelectError;
use crate::stats::StatsError;
use crate::telemetry::IngestError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("participant {participant}: {source}")]
    Participant {
        participant: String,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("malformed feature table: {0}")]
    Matrix(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the content of input data rather than by
    /// the invocation itself.
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::Config(_))
    }
}
