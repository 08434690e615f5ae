use std::fmt;

use thiserror::Error;

/// Errors produced by the samplers, function constructors and experiments.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: expected {expected}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("invalid function data: {0}")]
    InvalidFunction(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("covariance matrix is not positive definite: pivot {pivot:e} at row {row}")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error("circulant embedding has eigenvalue {min:e} below -{tol:e} (index {index})")]
    NegativeEigenvalue { index: usize, min: f64, tol: f64 },

    #[error("cholesky sampler is capped at {cap} steps, got {steps}")]
    StepCapExceeded { steps: usize, cap: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(
        name: &'static str,
        value: impl fmt::Display,
        expected: &'static str,
    ) -> Self {
        Error::InvalidParameter {
            name,
            value: value.to_string(),
            expected,
        }
    }
}
