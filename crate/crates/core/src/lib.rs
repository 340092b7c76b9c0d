//! Exact computations for Sarkisov links of codimension-2 Fano 3-folds.
//!
//! The pipeline is: pick a family from the [`catalog`], locate a terminal
//! cyclic quotient point ([`wps`]), build its Kawamata blowup inside a rank-2
//! toric variety ([`blowup`], [`toric`]), then play the 2-ray game on the
//! blown-up 3-fold ([`game`]). The [`exclusion`] module holds the numerical
//! tests that rule out maximal centres.
//!
//! All arithmetic is exact: integers for weights and bidegrees, [`Q`] for
//! everything else.

pub mod blowup;
pub mod catalog;
pub mod error;
pub mod exclusion;
pub mod game;
pub mod monomial;
pub mod qstr;
pub mod report;
pub mod tags;
pub mod toric;
pub mod wps;

pub use error::{Error, Result};

/// Exact rational number used throughout.
pub type Q = num_rational::Ratio<i64>;

/// Shorthand for `p/q`.
pub fn q(p: i64, d: i64) -> Q {
    Q::new(p, d)
}
