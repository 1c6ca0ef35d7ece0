//! Exact computer algebra for invertible quasihomogeneous polynomials.
//!
//! Given an invertible polynomial `f` (exactly `n` monomials in `n`
//! variables, nonsingular exponent matrix `E`) and a subgroup `G` of its
//! diagonal symmetry group, this crate computes the Berglund–Hübsch
//! transpose, the Henningson dual subgroup, orbifold monodromy zeta
//! functions of the pair `(f, G)` by two independent routes, and checks
//! the duality identities relating `(f, G)` to its dual pair.
//!
//! Everything is exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere.

pub mod corpus;
pub mod cyczeta;
pub mod error;
pub mod intlin;
pub mod invpoly;
pub mod orbzeta;
pub mod symgroup;

pub use error::{Error, Result};

/// Default cap on the number of group elements any enumeration is allowed
/// to materialize. Overridable per call site (the CLI reads `BHH_ENUM_BOUND`).
pub const DEFAULT_ENUM_BOUND: u64 = 1_000_000;
