//! Exact computer algebra for Lie pairs `(g, h)` of finite-dimensional Lie
//! algebras over the rationals.
//!
//! The crate builds the polydifferential complex `D• = T(D¹)` attached to the
//! quotient coalgebra `D¹ = U(g) / U(g)·h`, together with its cup product,
//! shuffle coproduct, antipode, unit and counit, the skew-symmetrization
//! (HKR) map out of `Λ(g/h)`, the free graded Lie algebra `L(D¹)` and the
//! Atiyah cocycle of the pair. Every structural identity is checked by exact
//! rational linear algebra on finite truncations.

#![allow(clippy::needless_range_loop)]

pub mod atiyah;
pub mod ce;
pub mod cli;
pub mod dpoly;
pub mod error;
pub mod free_lie;
pub mod hkr;
pub mod lie;
pub mod linalg;
pub mod lincomb;
pub mod pbw;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
