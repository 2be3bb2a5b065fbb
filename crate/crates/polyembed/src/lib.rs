//! Exact ECH capacity computations for symplectic embeddings of
//! four-dimensional ellipsoids into polydiscs.
//!
//! The crate computes capacity sequences, certifies embeddings through a
//! finite comparison plus an asymptotic lattice-point bound, searches for
//! obstructive exceptional classes, and assembles the embedding function
//! `d(a, b)`.

pub mod capacities;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod exceptional;
pub mod numeric;
pub mod obstruction;
pub mod reduction;

pub use error::{Error, Result};
pub use numeric::{q, QuadExt, Rational};
