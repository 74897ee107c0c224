//! One-point algebraic-geometry codes on Hermitian curves.
//!
//! The curve `y^q + y = x^(q+1)` over `F_(q^2)` is maximal: it meets the
//! Hasse-Weil bound with `q^3 + 1` rational points and genus `(q^2 - q)/2`.
//! This crate computes exact parameters of the one-point codes supported on
//! the place at infinity, counts divisor classes through the zeta function,
//! and searches the existence criteria that relate the two.
//!
//! Everything is exact: finite fields are represented by explicit polynomial
//! arithmetic, divisor counts use big integers, and minimum distances come
//! from full codeword enumeration behind a size guard.

pub mod arith;
pub mod curve;
pub mod emit;
pub mod error;
pub mod field;
pub mod linalg;
pub mod onepoint;
pub mod picard;
pub mod prospector;
pub mod weight;
pub mod zeta;

pub use error::{Error, Result};
