//! High-precision verification of harmonic-series and Euler-sum identities.
//!
//! The crate is organised as a stack of small modules:
//!
//! | Module | Provides |
//! |--------|----------|
//! | [`numkernel`] | arbitrary-precision reals, exact rationals, named constants, Bernoulli numbers |
//! | [`sequences`] | exact harmonic / skew-harmonic numbers, tails, generating functions |
//! | [`series`] | summation engines: direct, alternating acceleration, asymptotic-tail extrapolation, Abel transform |
//! | [`quadrature`] | tanh-sinh quadrature over finite intervals |
//! | [`specfun`] | ζ, η, β, polylogarithms, log Γ, polygamma, Barnes G, Ein/Ei, ζ′ special values |
//! | [`eulersum`] | symbolic closed forms over a constant basis with exact rational coefficients |
//! | [`registry`] | the identity catalog and the verification runner |
//!
//! Everything numeric flows through a [`PrecisionContext`]: callers ask for a
//! number of decimal digits and every operation works at that target plus
//! guard digits.

pub mod error;
pub mod eulersum;
pub mod numkernel;
pub mod quadrature;
pub mod registry;
pub mod sequences;
pub mod series;
pub mod specfun;

pub use error::{Error, Result};
pub use numkernel::{agree_digits, BigReal, ConstantName, PrecisionContext, Rational};
