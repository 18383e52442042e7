//! Exact computation in splitting rings of the characteristic polynomial:
//! factorization over ℚ, exponential-polynomial coefficients, heights,
//! multiplicative relations among the roots, and proofs that a series
//! coefficient vanishes identically.

mod exppoly;
mod factor;
mod field;
mod lll;
mod relations;
mod splitting;
mod zeroproof;

pub use exppoly::{exp_poly_coefficients, exp_poly_value, height_upper_bound, masser_bound};
pub use factor::factor_over_q;
pub use field::{AlgebraicNumber, NumberField};
pub use lll::lll_reduce;
pub use relations::{check_relation, monomial, multiplicative_relations, IntegerRelation, Maximality, RelationBasis};
pub use splitting::{splitting_field, SplittingRing};
pub use zeroproof::{compositions, f_j_identically_zero, FjOutcome, SymbolicConfig, SymbolicContext, ZeroProof};
