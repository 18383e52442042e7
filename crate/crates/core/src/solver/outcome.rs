use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;

use crate::certs::Certificate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutcomeKind {
    Solved { zeros: Vec<BigInt>, certificate: Certificate },
    Degenerate,
    NotSimple,
    IdenticallyZero,
    Timeout { reason: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// One more than the largest number of zeros on a root-to-leaf path.
    pub tree_depth: usize,
    /// Largest jump `M` computed at a zero (1 if there were none).
    pub max_jump: u64,
    pub zeros_count: usize,
    pub elapsed: Duration,
    /// Zero nodes processed.
    pub nodes: usize,
    /// Nodes where the requested fixed prime was not admissible.
    pub prime_fallbacks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub kind: OutcomeKind,
    pub stats: Stats,
}

impl Outcome {
    pub fn zeros(&self) -> Option<&[BigInt]> {
        match &self.kind {
            OutcomeKind::Solved { zeros, .. } => Some(zeros),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.kind {
            OutcomeKind::Solved { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            OutcomeKind::Solved { .. } => "solved",
            OutcomeKind::Degenerate => "degenerate",
            OutcomeKind::NotSimple => "not-simple",
            OutcomeKind::IdenticallyZero => "identically-zero",
            OutcomeKind::Timeout { .. } => "timeout",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OutcomeKind::Solved { zeros, .. } => {
                let z: Vec<String> = zeros.iter().map(|z| z.to_string()).collect();
                write!(f, "zeros: [{}]", z.join(", "))
            }
            OutcomeKind::Timeout { reason } => write!(f, "timeout: {reason}"),
            _ => f.write_str(self.label()),
        }
    }
}
