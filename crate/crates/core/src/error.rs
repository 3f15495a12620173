use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid series spec: {0}")]
    InvalidSpec(String),

    #[error("coefficient function is singular at {0}")]
    Pole(f64),

    #[error("series did not converge after {terms} terms")]
    NonConvergent { terms: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("entry `{entry}` has no parameter `{name}`")]
    UnknownParam { entry: String, name: String },

    #[error("parameter `{name}` = {value} is outside [{lo}, {hi}]")]
    ParamOutOfRange {
        name: String,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid catalog: {0}")]
    Catalog(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
