//! Enumeration of Lucas and Lehmer sequences whose `n`-th term has no
//! primitive divisor, for `4 < n <= 30`.
//!
//! The pipeline has four layers:
//!
//! * [`forms`] builds the cyclotomic binary forms `F_n(X, Y)` with
//!   `F_n(a^2 + b^2, ab) = Phi_n(a, b)` and the identities that relate forms
//!   of different indices.
//! * [`smalln`] settles the degree-two indices `n = 5, 8, 10, 12` through
//!   quartic equations, and [`thue`] settles every other index by a
//!   Baker-type bound followed by lattice reduction ([`lattice`]) and a
//!   continued-fraction search ([`contfrac`]).  Field data (roots, units,
//!   ideal generators, heights) lives in [`numberfield`].
//! * [`primdiv`] turns integer solutions `(x, y)` into sequence pairs
//!   `(alpha, beta)`, filters degenerate pairs and checks the absence of a
//!   primitive divisor directly from the sequence terms.
//! * [`pipeline`] ties everything together for the whole range of indices.

pub mod contfrac;
pub mod error;
pub mod forms;
pub mod lattice;
pub mod numberfield;
pub mod pipeline;
pub mod precision;
pub mod primdiv;
pub mod serial;
pub mod smalln;
pub mod thue;

pub use error::{Error, Result};
pub use precision::Precision;
