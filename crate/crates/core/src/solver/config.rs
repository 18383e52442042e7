use std::time::Duration;

use crate::padic::PrimeStrategy;

/// Limits and strategy for one solve. Every cap bounds work, never soundness:
/// hitting one yields a timeout, not an unverified answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// Wall-clock budget for the whole solve.
    pub time_budget: Duration,
    /// Largest modulus tried for a modulus witness.
    pub modulus_cap: u64,
    /// Zero probes per residue class.
    pub zero_search_cap: u64,
    pub prime_strategy: PrimeStrategy,
    /// Initial number of series terms examined per coefficient.
    pub max_terms: u64,
    /// Ceiling for the doubling of `max_terms` when a coefficient looks zero.
    pub max_terms_cap: u64,
    /// Largest exponent accepted in a multiplicative relation.
    pub max_exponent: u64,
    pub recursion_depth_cap: usize,
    /// Longest period stepped through for a single modulus.
    pub period_cap: u64,
    /// Largest jump `M` whose residue classes are enumerated.
    pub class_cap: u64,
    /// Largest splitting-ring degree for zero proofs.
    pub degree_cap: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            time_budget: Duration::from_secs(60),
            modulus_cap: 10_000,
            zero_search_cap: 1000,
            prime_strategy: PrimeStrategy::Smallest,
            max_terms: 64,
            max_terms_cap: 4096,
            max_exponent: 64,
            recursion_depth_cap: 16,
            period_cap: 1 << 20,
            class_cap: 1 << 20,
            degree_cap: 120,
        }
    }
}

impl SolveConfig {
    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.time_budget = t;
        self
    }
}
