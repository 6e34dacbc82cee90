//! Exact scalars, projective points and homogeneous forms in `x, y, z`.

pub mod modular;
mod point;
mod poly;
mod scalar;

pub use point::ProjectivePoint;
pub use poly::{monomial_basis, monomial_count, Exponent, HomoPoly, Order};
pub(crate) use poly::falling;
pub use scalar::{Field, Scalar};
pub(crate) use scalar::bigint_mod;
