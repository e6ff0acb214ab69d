use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Error)]
pub enum DiscError {
    /// A parameter that must lie strictly inside the unit disc does not.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A zero sequence contains duplicates or is otherwise unusable.
    #[error("degenerate sequence: {0}")]
    DegenerateSequence(String),

    /// A function-description document failed to parse; the path points at
    /// the offending node.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    /// An integrand produced a non-finite value at a quadrature node.
    #[error("numeric failure at node {index} (z = {re} + {im}i): {message}")]
    NumericFailure {
        index: usize,
        re: f64,
        im: f64,
        message: String,
    },

    /// Bad experiment configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, DiscError>;
