use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} exceeds the cap ({actual} > {limit})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("rank-deficient samples: nullspace has dimension {nullity} (expected 1)")]
    RankDeficient { nullity: usize },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("cannot normalize: pinned coefficient is zero")]
    NormalizationImpossible,

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("gadget template falsified: {0}")]
    TemplateFalsified(String),

    #[error("certificate construction failed: {0}")]
    CertificateFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
