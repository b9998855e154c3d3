//! Arithmetic infrastructure: sieving, `Λ`, `μ`, `Ω`, the Heath-Brown
//! identity and the Mertens product.

mod functions;
mod heath_brown;
mod sieve;

pub use functions::{lambda_of, mertens_product, mobius_of};
pub use heath_brown::{heath_brown_lambda, heath_brown_terms, HbTerm};
pub use sieve::{
    build_sieve, build_sieve_with, icbrt, isqrt, segments, small_primes, FactorSieve, Segments,
    SieveConfig,
};
