//! Integer projections of the cubic lattice.
//!
//! Projecting `Zⁿ` orthogonally onto `v⊥` for an integer vector `v` gives an
//! `(n−1)`-dimensional lattice `Λ_v`. This crate builds vectors `v` whose
//! projection lattices approach any target lattice up to similarity, and
//! measures how fast they get there: exact Gram data, lattice reduction,
//! certified shortest vectors, packing densities, and the search for fat
//! struts (wide empty cylinders between two points of `Zⁿ`).

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod gram_io;
pub mod lift;
pub mod projection;
pub mod reduction;
pub mod strut;

pub use error::{Error, Result};
pub use exact::{Matrix, QMatrix, Rational, ZMatrix};
pub use projection::{AxisVector, GeneratorMatrix, GramMatrix, ProjectionLattice};
