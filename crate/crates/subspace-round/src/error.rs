use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is identically zero")]
    ZeroMatrix,

    #[error("vector is identically zero")]
    ZeroVector,

    #[error("matrix is not symmetric (max asymmetry {max_asymmetry:.3e})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("iteration did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },

    #[error("set is empty")]
    EmptySet,

    #[error("node {node} belongs to more than one set")]
    OverlapDetected { node: usize },

    #[error("node {node} out of range for n = {n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("families have different sizes: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("greedy matching is not a bijection (closeness precondition violated)")]
    NotBijective,

    #[error("union of the two sets is empty")]
    EmptyUnion,

    #[error("no covering matching exists even at the largest candidate trim")]
    Infeasible,

    #[error("no (center, prefix) pair satisfies the acceptance conditions")]
    NoClusterFound,

    #[error("cluster centers are linearly dependent at iteration {iteration}")]
    DegenerateCenters { iteration: usize },

    #[error("set must be non-empty and a proper subset of V")]
    EmptyOrFullSet,

    #[error("partition does not cover every node")]
    IncompleteCover,

    #[error("cluster sizes sum to {total} which exceeds n = {n}")]
    SizesExceedN { total: usize, n: usize },

    #[error("rows are not orthonormal (deviation {deviation:.3e} exceeds 1e-8)")]
    InvalidEmbedding { deviation: f64 },

    #[error("iteration {iteration}: {source}")]
    Pipeline {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix entries must be finite")]
    NonFiniteEntries,

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Wrap an error with the outer-loop iteration it occurred in.
    pub fn at_iteration(self, iteration: usize) -> Self {
        Error::Pipeline {
            iteration,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
