use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at z = {0}")]
    Pole(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("order k = {0} outside the supported range |k| <= 30")]
    UnsupportedOrder(f64),
    #[error("no regime met the accuracy target at x = {x}, k = {k} (best estimate {est:e})")]
    Accuracy { x: f64, k: f64, est: f64 },
    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("|z| = {z} exceeds the series radius {radius}")]
    Radius { z: f64, radius: f64 },
    #[error("asymptotic expansion invalid at x = {x} for k = {k}")]
    Threshold { x: f64, k: f64 },
    #[error("bracket failure: {0}")]
    Bracket(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
