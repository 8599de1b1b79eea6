//! Exact enumeration of centered lozenge tilings of symmetric hexagons.
//!
//! The number of tilings of a `(2n-1, 2n-1, 2m)` or `(2n, 2n, 2m-1)` hexagon
//! that contain the central lozenge is computed along several independent
//! routes, which are checked against each other:
//!
//! * closed product/sum formulas ([`closed_forms`]),
//! * Gessel–Viennot determinants of lattice-path counts ([`gv`]) evaluated by
//!   an exact fraction-free kernel ([`matrix`]),
//! * brute-force enumeration of tilings and path families ([`tiling`]) on
//!   regions of the triangular lattice ([`lattice`]).
//!
//! Supporting identities (terminating hypergeometric summations and
//! transformations, a telescoping certificate) live in [`hypergeometric`]
//! and [`closed_forms`]; [`verify`] bundles everything into named suites.
//!
//! Generic code is written against [`Scalar`]; the exact instantiations used
//! throughout are the aliases below.

pub mod asymptotics;
pub mod check;
pub mod closed_forms;
pub mod error;
pub mod exact;
pub mod gv;
pub mod hypergeometric;
pub mod lattice;
pub mod matrix;
pub mod scalar;
pub mod tiling;
pub mod verify;

/// Arbitrary-precision integer.
pub type ExactInt = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = num_rational::BigRational;
/// Dense matrix of exact rationals.
pub type RationalMatrix = matrix::Matrix<ExactRational>;
/// Hypergeometric series with exact rational parameters.
pub type ExactSeries = hypergeometric::SeriesSpec<ExactRational>;

pub use asymptotics::asymptotic_limit;
pub use check::Verification;
pub use closed_forms::{centered_count, macmahon_count, q_ratio, CenteredProblem, HexagonSpec, Parity};
pub use error::{Error, Result};
pub use hypergeometric::{evaluate_terminating, SeriesSpec};
pub use lattice::{Cell, Lozenge, Orientation, Region};
pub use matrix::{exact_determinant, Matrix};
pub use scalar::Scalar;
pub use tiling::{Budget, PathFamilySpec};
