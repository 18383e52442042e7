//! Linear recurrence sequences indexed by ℤ: evaluation, minimal recurrences,
//! classification, subsequences, reversal and integer normalization.

mod classify;
mod minimal;
mod parse;
mod spec;
mod transform;

pub use classify::{classify, ratio_polynomial, unity_ratio_orders, Classification, SequenceClass};
pub use minimal::{berlekamp_massey, minimal_recurrence};
pub use parse::{format_rational, parse_rational, InputSpec};
pub use spec::{Recurrence, SequenceSpec};
pub use transform::{decompose, normalize_to_integer, reverse, subsequence, Normalized};
