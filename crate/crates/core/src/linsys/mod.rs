//! Linear systems of plane curves through fat points.

mod alpha;
mod dim;
mod matrix;
mod scheme;

pub use alpha::{
    alpha, alpha_diff, alpha_from, alpha_sequence, AlphaOptions, AlphaReport, AlphaValue,
    DegreeSummary, LowerCertificate, UpperCertificate,
};
pub use dim::{
    expected_dim, kernel_basis, seeded_primes, system_dim, Certification, DimOptions, DimOracle,
    DirectOracle, LinearSystemReport, Strategy,
};
pub use matrix::{build_condition_matrix, reduce_condition_matrix, ConditionMatrix};
pub use scheme::FatPointScheme;
pub(crate) use scheme::check_distinct;
