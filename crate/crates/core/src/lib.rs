//! Exact computation of degenerate Stirling numbers of both kinds, degenerate
//! (hyper)harmonic numbers and the degenerate Bernoulli, Euler, Bell and
//! Fubini polynomials, together with a registry of identities relating them
//! that can be swept over parameter grids.
//!
//! Everything is computed over exact rationals; `λ = 0` is always a legal
//! input and yields the classical objects.

pub mod algebra;
pub mod cli;
mod error;
pub mod identities;
pub mod sequences;
pub mod series;
mod value;

pub use algebra::{Poly, Rational, Ring};
pub use error::{Error, Result};
pub use series::Series;
pub use value::Value;
