//! Crystal bases, string and Nakashima-Zelevinsky polytopes, cluster charts on
//! unipotent cells, and a search for toric degenerations of Richardson varieties.

pub mod cli;
pub mod cluster;
pub mod error;
pub mod linalg;
pub mod minors;
pub mod par;
pub mod polytope;
pub mod rootdata;
pub mod semitoric;
pub mod verify;
pub mod zcrystal;

pub use error::{Error, Result};
