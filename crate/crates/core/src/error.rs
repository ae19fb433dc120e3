use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CvxError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rejected input: {0}")]
    InvalidInput(String),

    /// A theorem hypothesis does not hold for the supplied data.
    #[error("{0}")]
    Hypothesis(String),

    #[error("decomposition cap exceeded: {found} constraints in dimension {dim} (cap {cap}, max dim 3)")]
    DecompositionCap { found: usize, cap: usize, dim: usize },

    #[error("decomposition cap exceeded: more than {cap} clique refinements")]
    SearchCap { cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// An engine invariant failed; always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CvxError>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(CvxError::DimensionMismatch { expected, found })
    }
}
