//! Exact integral lattice computations: discriminant forms, genera of definite
//! lattices, Nikulin gluing, and counts of Fourier-Mukai partners of cubic
//! fourfolds.

pub mod catalog;
pub mod cli;
pub mod counting;
pub mod error;
pub mod definite;
pub mod fqm;
pub mod gluing;
pub mod json;
pub mod lattice;
pub mod registry;
pub mod linalg;
pub mod random;

pub use error::{Error, Result};
pub use lattice::{Lattice, LatticeVector, Sublattice};
pub use linalg::IntMatrix;
