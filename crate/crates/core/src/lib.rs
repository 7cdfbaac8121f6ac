//! Exact combinatorics for standard modules of `GL(n)` over a p-adic field.
//!
//! The crate is organised bottom-up:
//!
//! * [`coxeter`]: permutations, Bruhat order and the Schubert-cell index set
//!   used by the Bruhat filtration.
//! * [`klpoly`]: integer polynomials, R-polynomials and Kazhdan-Lusztig
//!   polynomials for the symmetric group, with a line-oriented table cache.
//! * [`zelevinsky`]: segments, multisegments, derivatives, duals and the
//!   `L*` pair statistic.
//! * [`grothendieck`]: formal sums of standard modules, regular blocks,
//!   Euler-Poincare pairing and restriction filtration layers.
//! * [`branching`]: the Ext-multiplicity oracle for `GL(n+1) x GL(n)` and
//!   the mechanized induction trace that justifies it.
//!
//! Everything is exact: rationals for cuspidal exponents, arbitrary
//! precision integers for polynomial coefficients.

pub mod branching;
pub mod coxeter;
mod error;
pub mod grothendieck;
pub mod klpoly;
mod limits;
pub mod zelevinsky;

pub use error::{Error, Result};
pub use limits::Limits;
