//! Exact computation of `c_k c_{n-k} = mu_k(n) c_n` on the permutohedral
//! variety of type `A_n`, together with three independent routes to the
//! coefficient: block-reduction combinatorics, brute-force expansion of the
//! product, and torus fixed-point localization.

pub mod arith;
pub mod counting;
pub mod error;
pub mod expansion;
pub mod fan;
pub mod formulas;
pub mod localization;
pub mod monomial;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
