//! Exact arithmetic kernel: integers, rationals, polynomials over ℚ and 𝔽_p,
//! resultants, cyclotomic tests, Stirling coefficients and valuations.

pub mod cyclotomic;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod primes;
pub mod stirling;
pub mod valuation;
pub mod zpoly;

pub use cyclotomic::{cyclotomic, has_root_of_unity_factor};
pub use matrix::{IntMatrix, ModMatrix};
pub use modp::{matrix_order_bound, splits_completely_mod_p, ModPoly};
pub use poly::{discriminant, resultant, squarefree_part, UniPoly};
pub use stirling::falling_factorial_coeffs;
pub use valuation::{padic_valuation, Valuation};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
