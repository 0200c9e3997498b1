//! Nonabelian SL(2,C) representations of the genus-one two-bridge knots
//! J(2m,2n), their twisted Alexander polynomials, Reidemeister torsion,
//! longitude traces and the torsion of Dehn surgeries.
//!
//! Every closed formula in [`torsion`] and [`riley`] has an independent
//! second route (Fox calculus, direct word evaluation) so the two can be
//! checked against each other; see [`verify`].

pub mod algebra;
pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod knotgroup;
pub mod riley;
pub mod torsion;
pub mod verify;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
