//! Finite-dimensional L-infinity models and jet-level BV calculus for
//! supersymmetric Yang-Mills actions.

pub mod jet;
pub mod sym;
pub mod linfty;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BvError {
    #[error("structure error: {0}")]
    Structure(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("pattern not matched: {0}")]
    Pattern(String),
}
