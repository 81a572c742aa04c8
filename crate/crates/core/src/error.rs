use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data that cannot be used (non-finite samples, missing files, ...).
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at row {row}, field `{field}`: {message}")]
    Parse {
        row: usize,
        field: String,
        message: String,
    },

    #[error("duplicate molecule `{0}` in catalog")]
    Conflict(String),

    #[error("level n = {n} is unbound: n_max = {n_max:.6}, only {bound_count} bound levels")]
    UnboundLevel {
        n: u32,
        n_max: f64,
        bound_count: u32,
    },

    #[error("modified angular momentum {ell_tilde} is not quantized for this channel (ñ would be {quanta})")]
    NonQuantized { ell_tilde: f64, quanta: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
