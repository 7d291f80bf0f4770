use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("accuracy loss: order {order} / argument {arg} outside the validated box |order| <= 64, 0 < arg <= 64")]
    AccuracyLoss { order: f64, arg: f64 },
    #[error("log-gamma pole at z = {0}")]
    Pole(f64),
    #[error("no bound state for a = {0}")]
    NoBoundState(f64),
    #[error("requested depth {depth} exceeds the {levels} available bound levels")]
    DepthExceedsLevels { depth: usize, levels: usize },
    #[error("near-singular denominator in the reflection formula at a = {a}, beta = {beta}")]
    NearSingular { a: f64, beta: f64 },
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("level count mismatch: Bessel roots give {roots}, grid oracle gives {grid}")]
    CountMismatch { roots: usize, grid: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
