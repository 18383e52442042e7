//! The p-adic engine: admissible primes, the order `L`, the matrix `B` with
//! `A^L = I + pB`, certified valuations of the series coefficients `a_j`, and
//! the jump step.

mod jump;
mod lift;
mod prime;
mod series;

pub use jump::{jump_exponent, jump_exponent_holds};
pub use lift::{coefficient_valuation_via_logs, hensel_lift_roots, padic_log, solve_mod};
pub use prime::{
    b_matrix, b_matrix_mod, is_admissible, matrix_admissible, matrix_order_mod_p, select_prime,
    PrimeStrategy, DEFAULT_PRIME_CAP,
};
pub use series::{
    check_tail_bounds, coefficient_valuation, partial_sums, series_value_mod, CoefficientCertificate,
    CoefficientResult, NodeSeries, PadicContext, SeriesSource,
};
