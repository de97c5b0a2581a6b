use crate::kernel::Site;
use crate::lattice::SupportPoint;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid anchor (t={t}, x={x}): t must be >= 1 and x must lie on the boundary")]
    InvalidAnchor { t: u32, x: Site },

    #[error("site {site} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        site: Site,
        expected: usize,
        found: usize,
    },

    #[error("{0}")]
    RegionViolation(String),

    #[error("point {0} is not a member of the support set")]
    NotMember(SupportPoint),

    #[error("start site {0} lies on the boundary")]
    StartOnBoundary(Site),

    #[error("start site {0} lies below the boundary")]
    StartBelowBoundary(Site),

    #[error("support set has {size} points; the permutation sum is limited to {limit} unless forced")]
    TooLarge { size: usize, limit: usize },

    #[error("perturbation site {site} is not anchored inside the support set of (t={t}, x={x})")]
    UnreachablePerturbation { site: Site, t: u32, x: Site },

    #[error("perturbation size must be nonzero")]
    ZeroPerturbation,

    #[error("kernel is not reflection symmetric within distance {horizon} of {base}")]
    NotSymmetric { horizon: u32, base: Site },

    #[error("number of paths must be at least 1")]
    NoPaths,

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
