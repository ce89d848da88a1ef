use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is rank deficient: |R[{index}][{index}]| = {value:e}")]
    RankDeficient { index: usize, value: f64 },

    #[error("power iteration did not converge after {iterations} iterations (last estimate {estimate})")]
    NoConvergence { iterations: usize, estimate: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid solver configuration: {0}")]
    Config(String),

    #[error("point is outside the domain of the nonsmooth term")]
    OutOfDomain,

    #[error("non-finite value encountered at iteration {k}")]
    NonFinite { k: usize },

    #[error("Armijo backtracking exceeded {0} trials")]
    StepUnderflow(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("trace is missing field `{field}` at record {k}")]
    MissingField { field: &'static str, k: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
