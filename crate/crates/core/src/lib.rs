//! Exact arithmetic for the dynamics of parabolic power series over fields
//! of characteristic p.
//!
//! The crate computes lower ramification numbers and periodic-point norms of
//! series f(ζ) = ζ(1 + Σ a_j ζ^j) with coefficients in F_p or in truncated
//! F_p((t)), evaluates the closed forms for the first significant
//! coefficients of p-power iterates, verifies the finite p-adic sum
//! identities those closed forms rest on, and reads periodic-point
//! valuations off Newton polygons. Everything is exact: valuations are
//! integers or rationals, never floats, and any quantity that cannot be
//! certified at the working precision is reported as a bound or an error
//! rather than a guess.
//!
//! The crate is `no_std` (with `alloc`); all I/O, parsing and the command
//! line live in the companion `ramdyn` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod closed_form;
pub mod error;
pub mod fp;
pub mod laurent;
pub mod newton;
pub mod padic;
pub mod ramification;
pub mod recurrences;
pub mod scalar;
pub mod series;
pub mod sums;

pub use error::{Error, Result};
pub use fp::{FpElem, FpField};
pub use laurent::{LaurentScalar, DEFAULT_TPREC};
pub use scalar::Scalar;
pub use series::{OrdBound, TruncatedSeries};
