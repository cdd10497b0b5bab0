use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("form matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("space is not symplectic: radical has dimension {0}")]
    NotSymplectic(usize),

    #[error("form restricted to the subspace is degenerate")]
    DegenerateRestriction,

    #[error("{0} not isotropic")]
    NotIsotropic(String),

    #[error("{0} not coisotropic")]
    NotCoisotropic(String),

    #[error("invalid rank {rank} for dimension {dim}: rank must be even and at most the dimension")]
    InvalidRank { dim: usize, rank: usize },

    #[error("invalid multiplicities: {0}")]
    InvalidMultiplicities(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
