//! Exact equivariant localization on toric varieties.

pub mod applications;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod localization;
pub mod polyalg;
pub mod polyhedra;

pub use error::{Error, Result};
