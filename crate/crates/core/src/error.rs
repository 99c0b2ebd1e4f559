//! Crate-level error type aggregating the per-module errors.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error(transparent)]
    Word(#[from] crate::words::WordError),
    #[error(transparent)]
    Hyp(#[from] crate::hyperbolic::HypError),
    #[error(transparent)]
    Intersect(#[from] crate::intersect::IntersectError),
    #[error(transparent)]
    Bracket(#[from] crate::goldman::BracketError),
}
