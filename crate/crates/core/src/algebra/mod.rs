//! Exact polynomial algebra over Q: sparse multivariate polynomials, gcds,
//! resultants, Gröbner bases, truncated power series and elimination.

use num_rational::BigRational;
use thiserror::Error;

pub mod eliminate;
pub mod format;
pub mod gcd;
pub mod groebner;
pub mod modp;
pub mod mpoly;
pub mod resultant;
pub mod series;
pub mod upoly;

pub use eliminate::eliminate_to_root;
pub use format::{format_bivariate, format_flat, parse_bivariate, parse_poly};
pub use mpoly::{MPoly, Monomial};
pub use series::{series_solve, series_vanishes, Series};

pub type Rat = BigRational;

/// Index of `P` in the bivariate ring `[P, x]`.
pub const P_VAR: usize = 0;
/// Index of `x` in the bivariate ring `[P, x]`.
pub const X_VAR: usize = 1;
/// Variable names of the bivariate ring.
pub const BIVARIATE_NAMES: [&str; 2] = ["P", "x"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("variable {0} has no image in the target ring")]
    UnexpectedVariable(usize),
    #[error("prefix of length {prefix} does not determine a unique series root")]
    BranchAmbiguity { prefix: usize },
    #[error("prefix is not a truncated root of the polynomial")]
    InconsistentPrefix,
    #[error("no polynomial free of auxiliary variables was found")]
    NoEliminant,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Canonical published form of a polynomial in `[P, x]`: integer, primitive,
/// free of content in `x`, with positive leading coefficient.
pub fn canonical(p: &MPoly) -> MPoly {
    upoly::remove_content_in(p, X_VAR)
}
