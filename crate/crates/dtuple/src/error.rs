use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The candidate stream ran dry before all eight rows were selected.
    /// `progress` carries the elements picked so far, b-stage first.
    #[error("candidate stream exhausted during {stage} stage after {} picks", progress.len())]
    StreamExhausted {
        stage: &'static str,
        progress: Vec<u64>,
    },

    #[error("memory guard exceeded: {0}")]
    MemoryGuard(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
