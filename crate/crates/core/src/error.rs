use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LcmError {
    #[error("x = {x} lies outside the domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("discontinuity at knot {index} (x = {x}): jump {jump:e} exceeds tolerance")]
    Discontinuous { index: usize, x: f64, jump: f64 },

    #[error("derivative jump at knot {index} (x = {x}): {jump:e}; input must be differentiable off the maximum set")]
    NotDifferentiable { index: usize, x: f64, jump: f64 },

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, LcmError>;
