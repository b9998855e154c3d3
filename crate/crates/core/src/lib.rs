//! Computational checks for almost-primes of the form `[p^(1/γ)]`.
//!
//! The crate re-derives the explicit constants, admissibility inequalities,
//! sieve functions and counting identities behind a weighted-sieve argument
//! that `[p^(1/γ)]` has at most seven prime factors infinitely often for
//! `0.989 < γ < 1`. Every quantity is exposed as a library operation; the
//! `ps-sieve-lab` binary wraps them as subcommands.
//!
//! Module map:
//!
//! - [`arith_core`]: segmented smallest-prime-factor sieve, `Λ`, `μ`, `Ω`,
//!   the Heath-Brown identity and the Mertens product.
//! - [`sieve_functions`]: the linear-sieve functions `F` and `f`.
//! - [`params`]: the `(γ, η, ε, ξ, u, λ)` parameter bundle, admissibility
//!   constraints, exponent budgets and the final lower-bound bracket.
//! - [`exp_sums`]: exact exponent-pair algebra and empirical checks of the
//!   exponential-sum lemmas.
//! - [`ps_counts`]: desk-scale counts over `A = {[p^(1/γ)]}` and the
//!   eight-prime set `B`.
//! - [`partial_products`]: the exhaustive partial-product certificate.
//! - [`cli`], [`config`], [`suite`]: command-line front end, run
//!   configuration and the acceptance suite behind `reproduce`.

pub mod arith_core;
pub mod cli;
pub mod config;
mod error;
pub mod exp_sums;
pub mod params;
pub mod partial_products;
pub mod ps_counts;
pub mod quadrature;
pub mod sieve_functions;
pub mod suite;

pub use error::{Error, Result};

/// Euler's constant `C₀`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// The sifting range is `z = x^(1/SIFT_RATIO)`.
pub const SIFT_RATIO: f64 = 17.41;
