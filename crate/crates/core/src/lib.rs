//! Homotopy colimits and limits of finite diagrams of truncated simplicial
//! sets, computed through bar and cobar constructions, together with
//! checkers for the comparison isomorphisms between the various models.

pub mod barcobar;
pub mod cli;
pub mod compare;
pub mod diagram;
pub mod error;
pub mod fincat;
pub mod nerve;
pub mod simpset;

pub use error::{Error, Result};
