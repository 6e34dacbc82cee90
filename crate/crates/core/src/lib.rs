//! Exact computation of initial degrees of symbolic powers of ideals of
//! finite point sets in the projective plane.

pub mod algebra;
pub mod analysis;
pub mod configs;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod linsys;

pub use error::{Error, Result};
