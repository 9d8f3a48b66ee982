//! Haar graphs over finite groups.

pub mod cli;
pub mod error;
pub mod group;
pub mod graph;
pub mod haar;
pub mod perm;
pub mod survey;

pub use error::{Error, Result};
