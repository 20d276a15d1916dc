use thiserror::Error;

use crate::complex::Face;

/// Errors raised by the library.
///
/// The variants split into three families the CLI maps onto exit codes:
/// caller mistakes (`Precondition`, `InvalidComplex`, `Parse`), geometric
/// failures (`Degenerate`, `ConstructionFailed`, `BudgetExceeded`) and
/// violated postconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A determinant or affine dependence that must be nonzero vanished.
    #[error("degenerate point subset {subset:?}")]
    Degenerate { subset: Vec<usize> },

    /// The embedding builder ran out of retries while placing a face.
    #[error("could not place face {face:?} after {attempts} attempts")]
    ConstructionFailed { face: Face, attempts: usize },

    #[error("{required} subsets exceed the exhaustive budget of {budget}; use sampled mode")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("postcondition violated: {0}")]
    Postcondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for failures caused by the geometry or the enumeration budget
    /// rather than by malformed input.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Error::Degenerate { .. } | Error::ConstructionFailed { .. } | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
