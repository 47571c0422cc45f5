use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("basis mismatch: N_max {left} vs {right}")]
    BasisMismatch { left: usize, right: usize },

    #[error("sector kappa'={kappa} has no matrix units at N_max={n_max}")]
    EmptySector { kappa: i32, n_max: usize },

    #[error("interior depth {depth} leaves nothing inside N_max={n_max}")]
    NoInterior { depth: usize, n_max: usize },

    #[error("entry ({row}, {col}) breaks grading kappa'={kappa}")]
    Grading { row: usize, col: usize, kappa: i32 },

    #[error("expected kappa'={expected}, operand is in kappa'={found}")]
    SectorMismatch { expected: i32, found: i32 },

    #[error("evaluation on the Dirac string: {0}")]
    DiracString(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown generator label `{0}`")]
    UnknownGenerator(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("span of {size} operators has rank {rank}")]
    RankDeficient { size: usize, rank: usize },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
