//! Exact-arithmetic building blocks for the decategorified side of quantum sl2.
//!
//! Everything here is computed over arbitrary-precision rationals; there is no
//! floating point anywhere. The crate is `no_std` (with `alloc`) so the
//! algebraic core stays free of platform dependencies; the companion CLI crate
//! carries all IO.
//!
//! Module map:
//! - [`qscalar`]: Laurent polynomials in q, normalized rational functions,
//!   quantum integers/factorials/binomials, truncated series expansion.
//! - [`multipoly`]: dense-map multivariate polynomials over the rationals.
//! - [`linalg`]: exact rank/solve over the rationals (row reduction).
//! - [`symfunc`]: symmetric functions in the e-basis, Jacobi-Trudi Schur
//!   determinants, evaluation in finitely many variables.
//! - [`nilhecke`]: divided differences, the nilHecke algebra in canonical
//!   form, the staircase basis and the matrix representation theta.
//! - [`grasscoh`]: cohomology of Grassmannians and one-step flag varieties,
//!   Schur-basis arithmetic in a box, graded dimensions, E/F scalars.
//! - [`cyclo`]: cyclotomic quotients of the nilHecke algebra and their
//!   matrix-ring dimensions, with a brute-force oracle.
//! - [`udot`]: the idempotented quantum group, tau, and the semilinear form.
//! - [`bubbles`]: dotted bubbles as symmetric functions, fake bubbles, the
//!   infinite Grassmannian equation, curl reduction, alpha coefficients and
//!   the chi parameter validator.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bubbles;
pub mod cyclo;
pub mod grasscoh;
pub mod linalg;
pub mod multipoly;
pub mod nilhecke;
pub mod qscalar;
pub mod symfunc;
pub mod udot;

pub use qscalar::{LaurentPoly, QSeries, RationalQ};
