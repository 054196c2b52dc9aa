use thiserror::Error;

/// Errors raised by dataset handling, model evaluation and estimation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("schema error: missing column `{0}`")]
    MissingColumn(String),

    #[error("parse error at row {row}, column `{column}`: cannot read `{value}` as a number")]
    Parse {
        row: usize,
        column: String,
        value: String,
    },

    #[error("integrity error in situation `{situation}`: {reason}")]
    Integrity { situation: String, reason: String },

    #[error("model specification error: {0}")]
    Spec(String),

    #[error("parameter `{0}` is missing from the parameter vector")]
    MissingParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("objective is not finite at the starting point")]
    NonFiniteStart,

    #[error(
        "Hessian is not invertible; most collinear parameters are `{first}` and `{second}` \
         (correlation {correlation:.6})"
    )]
    SingularHessian {
        first: String,
        second: String,
        correlation: f64,
    },

    #[error("division by zero: {0}")]
    ZeroDenominator(String),

    #[error("{0}")]
    Undefined(String),

    #[error("fold {fold}: {source}")]
    Fold {
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<V, E = Error> = std::result::Result<V, E>;
