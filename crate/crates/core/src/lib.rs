//! Exact computations in KLR algebras of quivers with involution.

pub mod error;
pub mod ground;
pub mod weyl;
pub mod quiver;
pub mod hecke;
pub mod klr;
pub mod characters;
pub mod fmod;
pub mod cli;

pub use error::{Error, Result};
