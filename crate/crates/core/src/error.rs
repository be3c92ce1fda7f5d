use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidSpec(String),

    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("permutation does not preserve adjacency (generator {index})")]
    NotAnAutomorphism { index: usize },

    #[error("parametrized automorphisms unavailable: {0}")]
    Unsupported(String),

    #[error("{what} exceeds bound ({value} > {bound})")]
    BoundExceeded { what: &'static str, value: u128, bound: u128 },

    #[error("graph6 parse error: {0}")]
    Graph6(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
