//! Exact-arithmetic invariants of braids attached to finite Coxeter groups.
//!
//! The library computes, over types A_n (n ≤ 8) and I2(m) (3 ≤ m ≤ 12):
//!
//! * the virtual-character-valued trace `Tr⟨β⟩` on the Iwahori–Hecke algebra
//!   and its normalization `Tr⟨β⟩⁰`,
//! * the Markov trace and the HOMFLY series of braid closures (type A),
//! * fake/generic degrees, Schur elements, Fourier tables, Molien series,
//! * graded characters of Verma modules and the virtual module Ω_ν for the
//!   rational Cherednik algebra at a rational slope ν,
//! * brute-force point counts of chain varieties over small finite fields,
//!   compared against the Hecke-character predictions.
//!
//! Everything is exact: rationals, Laurent polynomials in `t = q^{1/2}`,
//! normalized rational functions, and cyclotomic numbers. No floating point.

pub mod exactmath;
pub mod coxeter;
pub mod hecke;
pub mod reptheory;
pub mod traces;
pub mod daha;
pub mod ffcount;
pub mod cli;

use thiserror::Error;

/// Library-wide error type.
///
/// `Validation` covers bad user input (unsupported type, malformed braid,
/// size guards); `Internal` marks a broken invariant that should never be
/// reachable from valid input (these map to a distinct process exit code).
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("internal assertion failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
