//! Degree-1 weight modules of `sl(n+1, ℂ)`.

pub mod bracket;
pub mod cli;
pub mod classify;
pub mod deform;
pub mod error;
pub mod generator;
pub mod multi_index;
pub mod realization;
pub mod report;
pub mod scalar;
pub mod sparse;
pub mod unitarity;
pub mod verify;

pub use error::{Error, Result};
