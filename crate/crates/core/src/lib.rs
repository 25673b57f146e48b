//! Exact construction of homogeneous bases for the module `D(A, μ)` of
//! logarithmic derivations of a multiarrangement of lines through the origin
//! of a two-dimensional vector space.
//!
//! Everything here is exact: scalars live in `ℚ` (arbitrary precision) or in
//! a prime field `F_p`. The crate is `no_std` and only needs `alloc`; file
//! formats, the command line and batch drivers live in the `multiarr` crate.
//!
//! The main entry points are [`basis::alg3`], which walks a saturated chain
//! from the empty arrangement and applies the single-step update
//! [`basis::alg2`] at each step, and [`oracle::exponents_by_oracle`], which
//! recovers the exponents independently by exact linear algebra.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod arrangement;
pub mod basis;
pub mod derivation;
pub mod error;
pub mod field;
pub mod oracle;
pub mod poly;

pub use arrangement::{LinearForm, Multiarrangement};
pub use basis::{BasisPair, Exponents};
pub use derivation::Derivation;
pub use error::{Error, ErrorKind, Result};
pub use field::{FieldElement, FieldSpec};
pub use poly::HomogPoly;
