//! Exact-arithmetic toolkit for the spectral data of commutative association
//! schemes.
//!
//! The crate computes eigenmatrices, valencies, multiplicities, Krein and
//! intersection numbers for six scheme families (Hamming, Johnson,
//! bilinear forms, Grassmann, nonbinary Johnson, attenuated spaces) in exact
//! rational arithmetic, compares closed-form Krein expressions against
//! generic spectral sums, cross-checks small instances against brute-force
//! matrix oracles built from the underlying combinatorial objects, and
//! verifies multivariate P/Q-polynomial structure and Leonard-pair structure
//! on principal Terwilliger modules.
//!
//! There is no floating point anywhere: every check is an exact equality of
//! rationals.

pub mod exact;
pub mod families;
pub mod leonard;
pub mod matrix;
pub mod oracle;
pub mod orthopoly;
pub mod scheme;

pub use exact::Rational;
pub use num::bigint::BigInt;
