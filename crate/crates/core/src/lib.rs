//! Exact VN-space decompositions of lattices under polyhedral norms.

pub mod analysis;
pub mod arrangement;
pub mod error;
pub mod exact;
pub mod job;
pub mod lattice;
pub mod lattice_enum;
pub mod linalg;
pub mod norm;
pub mod polyhedra;
pub mod report;
pub mod svg;
pub mod symmetry;
pub mod vn;

pub use error::{Error, Result};
pub use exact::{IntMatrix, LinearForm, QVector, Rational};
