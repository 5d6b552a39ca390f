use crate::plan::Violation;

/// Errors surfaced by solvers, oracles, generators and file I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("instance must contain at least one request")]
    EmptyInstance,

    #[error("point set must be non-empty")]
    EmptyPoints,

    #[error("capacity must be at least 1")]
    ZeroCapacity,

    #[error("capacity {capacity} exceeds request count {n}")]
    CapacityExceedsRequests { capacity: usize, n: usize },

    #[error("strip tours need 2-dimensional points, got dimension {0}")]
    StripDimension(usize),

    #[error("invalid plan: {0}")]
    InvalidPlan(Violation),

    #[error("loaded-distance sum is zero; the ratio bound is undefined")]
    ZeroLoadedSum,

    #[error("instance too large for the exact solver: n={n}, cap={cap}")]
    TooLargeForExact { n: usize, cap: usize },

    #[error("matching sides differ: {0} deliveries vs {1} pickups")]
    MatchingSizeMismatch(usize, usize),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
