//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("constant term violation: {0}")]
    ConstantTerm(String),
    #[error("incompatible operands: {0}")]
    Mismatch(String),
    #[error("truncation degree exceeded: {0}")]
    Degree(String),
    #[error("point is not on the open locus: {0}")]
    InvalidPoint(String),
    #[error("series does not converge: {0}")]
    Convergence(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("construction did not stabilize: {0}")]
    Unstable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
