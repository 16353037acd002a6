use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("complex dimension {0} unsupported (expected 2..=6)")]
    Dimension(usize),

    #[error("label {label} out of range for complex dimension {n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("structure constants not integrable (residual {residual:e})")]
    NotIntegrable { residual: f64 },

    #[error("metric not hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("metric not positive definite (min eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    #[error("invalid connection parameters: {0}")]
    Params(String),

    #[error("unknown catalog entry '{0}'")]
    UnknownCatalog(String),

    #[error("unknown random family '{0}'")]
    UnknownFamily(String),

    #[error("{0}")]
    Config(String),
}
