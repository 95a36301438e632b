use std::io;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {0} is outside the support {{1, 2, 3, ...}}")]
    Domain(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("standard deviation is undefined: {0}")]
    MomentUndefined(String),
    #[error("sample is empty")]
    EmptySample,
    #[error("all counts are equal ({0}); the likelihood has no interior maximum")]
    DegenerateData(u64),
    #[error("fit failed: {0}")]
    FitFailed(String),
    #[error("log-likelihood differences have zero variance; the models are indistinguishable on this sample")]
    IdenticalModels,
    #[error("at least {min} repetitions are required, got {reps}")]
    TooFewReps { reps: usize, min: usize },
    #[error("the statistic failed on all {0} resamples")]
    AllStatisticsFailed(usize),
    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("offset 0 cannot be used with zero counts (line {line}); the support starts at 1")]
    Offset { line: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::MomentUndefined(_)
                | Error::DegenerateData(_)
                | Error::FitFailed(_)
                | Error::IdenticalModels
                | Error::AllStatisticsFailed(_)
        )
    }
}
