//! Counting Motzkin paths with forbidden peak heights, valley heights and run
//! lengths, and deriving the algebraic equation `F(x, P) = 0` satisfied by the
//! generating function of the counts.
//!
//! Two independent routes are provided:
//!
//! * [`dp`] computes terms numerically and [`guess`] fits a polynomial to them;
//! * [`symbolic`] builds a finite polynomial system from a grammar
//!   decomposition and eliminates it with the [`algebra`] kernel.
//!
//! [`oracle`] enumerates paths by brute force and backs the test-suite;
//! [`cli`] is the `motzkin` command-line front end.

pub mod sets;
pub mod oracle;
pub mod dp;
pub mod algebra;
pub mod guess;
pub mod symbolic;
pub mod cli;

pub use sets::{Progression, RestrictionSpec, SetError, StepSet};
