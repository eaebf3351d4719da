//! Exact-arithmetic laboratory for Lehmer's tridiagonal determinant.
//!
//! The determinant `Q_n(X, q)` of the `n × n` matrix with unit diagonal and
//! off-diagonal entries `√X·q^{(i-1)/2}` is computed two ways ([`lehmer`]),
//! compared with its closed form as a sum of Gaussian polynomials
//! ([`closedform`]), rediscovered from data by two guessing pipelines
//! ([`discovery`]), proved at desk scale by recurrence and certificate
//! checks ([`verifier`]), and related to partition counts and OEIS data
//! through its `n → ∞` limit ([`qseries`]).

pub mod cache;
pub mod closedform;
pub mod discovery;
pub mod error;
pub mod exactalg;
pub mod fixtures;
pub mod lehmer;
pub mod qseries;
pub mod reproduce;
pub mod verifier;

pub use error::{Error, Result};
