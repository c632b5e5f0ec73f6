//! Exact counting of 1-3-2-restricted permutations under generalized
//! (vincular) patterns.
//!
//! The crate has three layers:
//!
//! - enumeration oracles that produce ground-truth counting tables by
//!   streaming the relevant permutation classes ([`enumerate`]),
//! - exact series machinery: truncated power series over rationals
//!   ([`series`]) and the rescaled Chebyshev layer ([`chebyshev`]),
//! - a catalog of closed forms and recursion engines for the four counting
//!   families F/G/H/PHI ([`closed_forms`]), plus a verification harness that
//!   compares every catalog entry against enumeration and reports agreement
//!   or documented discrepancies ([`verify`]).

pub mod chebyshev;
pub mod closed_forms;
pub mod enumerate;
pub mod pattern;
pub mod series;
pub mod verify;

pub use enumerate::Family;
pub use pattern::{GeneralizedPattern, Permutation};
pub use series::QSeries;
