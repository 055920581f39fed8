//! Exact operational calculus on truncated generalized lower Hessenberg matrices.
//!
//! An infinite matrix `A` with `a[j][k] = 0` whenever `j - k < m` is stored as
//! its first `valid_rows` rows ([`TruncMatrix`]). Every operation tracks how
//! many rows of its result are still exact, so that identities between
//! matrices can be checked by plain equality over exact rings
//! ([`Rational`], [`ParamPoly`]).
//!
//! On top of the matrix algebra the crate provides
//!
//! - [`series`]: truncated formal power series, `g(D)`, `g(X̂)` and c-factorials;
//! - [`diffop`]: the expansion `A = Σ Dᵏ/k!·pₖ(X)` of index-zero matrices;
//! - [`monomial`]: the monomiality operators `M = A⁻¹XA`, `P = A⁻¹DA` and friends;
//! - [`families`]: Appell, binomial-type, Sheffer, Riordan, three-term
//!   orthogonal and Ward (c-derivative) families.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod coeff;
pub mod diffop;
mod error;
pub mod families;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod series;

pub use coeff::{binomial, factorial, ParamPoly, Rational, Ring, RingElement};
pub use error::{Error, Result};
pub use matrix::{Basis, MatrixIndex, TruncMatrix};
pub use poly::Poly;
pub use series::{CFactorial, PowerSeries};
