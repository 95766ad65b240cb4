use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("eigensolver failed: {0}")]
    Eigen(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("function has a nullspace component of size {0:.3e}")]
    NullspaceComponent(f64),
    #[error("partition sandwich violated at point {point} (center {center})")]
    Sandwich { point: usize, center: usize },
    #[error("sampling constant too large: {0}")]
    Sampling(String),
    #[error("neumann series diverged after {terms} terms")]
    Divergence { terms: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("approximation tolerance unreachable: achieved {achieved:.3e} at R = {radius}")]
    ToleranceUnreachable { achieved: f64, radius: f64 },
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("symbol error: {0}")]
    Symbol(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
