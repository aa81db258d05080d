use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("clustering has {got} vertices but the instance has {expected}")]
    ClusteringMismatch { expected: usize, got: usize },

    #[error("LP solution has {got} vertices but the instance has {expected}")]
    SolutionMismatch { expected: usize, got: usize },

    #[error("instance with {n} vertices exceeds the exhaustive-search cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("blowup would have {vertices} vertices (limit {limit})")]
    BlowupTooLarge { vertices: usize, limit: usize },

    #[error("infeasible LP point: {0}")]
    InfeasiblePoint(String),

    #[error("simplex iteration cap of {0} exceeded")]
    IterationCap(usize),

    #[error("numerical breakdown: {0}")]
    Numerical(String),

    #[error("rounding scheme: {0}")]
    Scheme(String),

    #[error("lengths ({0}, {1}, {2}) violate the triangle inequality")]
    NotATriangle(f64, f64, f64),

    #[error("scheme `{0}` is not eligible for tight-triangle reduction and full-grid fallback is disabled")]
    Ineligible(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
