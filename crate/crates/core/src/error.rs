use thiserror::Error;

/// Errors from the design pipeline and the experiment drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("solver failure: {message} (last iterate {last_iterate:e})")]
    SolverFailure { message: String, last_iterate: f64 },

    #[error("density inversion failure: {0}")]
    DensityInversion(String),

    #[error("point generation failure: {0}")]
    PointGeneration(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("invalid regime: {0}")]
    InvalidRegime(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Attach a pipeline stage label, e.g. `design` or `density`.
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
