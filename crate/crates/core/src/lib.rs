pub mod characters;
pub mod cli;
pub mod error;
pub mod feasibility;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod polytope;
pub mod reconstruct;
pub mod root_datum;
pub mod weyl;

pub use error::{Error, Result};
