//! The top-level procedure: classify, search each residue class for a zero or
//! a modulus witness, isolate every zero found by a p-adic jump, recurse on
//! the remaining classes, and assemble the certificate.

mod config;
mod node;
mod outcome;
mod search;

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use config::SolveConfig;
pub use outcome::{Outcome, OutcomeKind, Stats};
pub use search::{bi_skolem_decide, modulus_witness_search, zero_search, BiSkolem};

use crate::certs::{Certificate, InputEcho, ModulusWitness, ProgressionEntry, Witness, WorkingSpec};
use crate::error::{Error, Result};
use crate::lrs::{classify, normalize_to_integer, InputSpec, Recurrence, SequenceClass, SequenceSpec};
use crate::numfield::SymbolicConfig;
use node::{jump_step, JumpRequest, LazySymbolic};
use search::{search_classes, ClassResult, SearchLimits, Working};

struct Engine<'a> {
    w: Working<'a>,
    cfg: &'a SolveConfig,
    deadline: Instant,
    symbolic: LazySymbolic,
    entries: Vec<ProgressionEntry>,
    zeros: Vec<i64>,
    stats: Stats,
}

impl Engine<'_> {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            modulus_cap: self.cfg.modulus_cap,
            probe_cap: self.cfg.zero_search_cap,
            period_cap: self.cfg.period_cap,
            deadline: self.deadline,
        }
    }

    /// Close the classes `k` of `z + stride·(k + jump·n)`.
    fn search(&mut self, z: i64, stride: &BigInt, jump: u64, classes: &[u64], depth: usize) -> Result<()> {
        self.stats.tree_depth = self.stats.tree_depth.max(depth);
        let results = search_classes(&self.w, z, stride, jump, classes, self.limits())?;
        let modulus = stride * jump;
        for (&k, r) in classes.iter().zip(results) {
            match r {
                ClassResult::Witness { m, period } => self.entries.push(ProgressionEntry {
                    modulus: modulus.clone(),
                    residue: (BigInt::from(z) + stride * k).mod_floor(&modulus),
                    witness: Witness::Modulus(ModulusWitness { m, period }),
                }),
                ClassResult::Zero(idx) => self.zero(idx, modulus.clone(), depth + 1)?,
            }
        }
        Ok(())
    }

    fn zero(&mut self, idx: i64, stride: BigInt, depth: usize) -> Result<()> {
        if depth > self.cfg.recursion_depth_cap {
            return Err(Error::ResourceLimit { what: "recursion depth".into(), cap: self.cfg.recursion_depth_cap as u64 });
        }
        self.stats.nodes += 1;
        self.zeros.push(idx);
        let req = JumpRequest {
            spec: self.w.spec,
            center: idx,
            stride: stride.clone(),
            strategy: self.cfg.prime_strategy,
            max_terms: self.cfg.max_terms,
            max_terms_cap: self.cfg.max_terms_cap,
            symbolic: SymbolicConfig { degree_cap: self.cfg.degree_cap, exponent_cap: self.cfg.max_exponent },
        };
        let j = jump_step(&req, &mut self.symbolic)?;
        if j.prime_fallback {
            self.stats.prime_fallbacks += 1;
        }
        let m = j
            .jump
            .to_u64()
            .filter(|&m| m <= self.cfg.class_cap)
            .ok_or_else(|| Error::ResourceLimit { what: format!("jump {} has too many classes", j.jump), cap: self.cfg.class_cap })?;
        self.stats.max_jump = self.stats.max_jump.max(m);
        let modulus = &stride * m;
        self.entries.push(ProgressionEntry {
            modulus: modulus.clone(),
            residue: BigInt::from(idx).mod_floor(&modulus),
            witness: Witness::Valuation(j.witness),
        });
        let classes: Vec<u64> = (1..m).collect();
        self.search(idx, &stride, m, &classes, depth)
    }
}

fn timeout(reason: impl Into<String>, stats: Stats) -> Outcome {
    Outcome { kind: OutcomeKind::Timeout { reason: reason.into() }, stats }
}

/// All zeros of the sequence with a certificate, or the reason there is none.
/// Exhausted budgets become `Timeout`; other errors are returned.
pub fn find_all_zeros(input: &InputSpec, cfg: &SolveConfig) -> Result<Outcome> {
    let start = Instant::now();
    let norm = normalize_to_integer(&input.coefficients, &input.initial)?;
    let class = classify(&norm.spec)?;
    let mut stats = Stats { max_jump: 1, ..Stats::default() };
    let kind = match class.variant {
        SequenceClass::Degenerate => Some(OutcomeKind::Degenerate),
        SequenceClass::NotSimple => Some(OutcomeKind::NotSimple),
        SequenceClass::IdenticallyZero => Some(OutcomeKind::IdenticallyZero),
        SequenceClass::SimpleNonDegenerate => None,
    };
    if let Some(kind) = kind {
        stats.elapsed = start.elapsed();
        return Ok(Outcome { kind, stats });
    }
    let working = class.minimal;
    let mut engine = Engine {
        w: Working::new(&working)?,
        cfg,
        deadline: start + cfg.time_budget,
        symbolic: LazySymbolic::default(),
        entries: Vec::new(),
        zeros: Vec::new(),
        stats,
    };
    let run = engine.search(0, &BigInt::from(1), 1, &[0], 1);
    let mut stats = std::mem::take(&mut engine.stats);
    stats.zeros_count = engine.zeros.len();
    stats.elapsed = start.elapsed();
    match run {
        Ok(()) => {}
        Err(e @ (Error::Budget(_) | Error::ResourceLimit { .. })) => return Ok(timeout(e.to_string(), stats)),
        Err(e) => return Err(e),
    }
    let mut zeros: Vec<BigInt> = engine.zeros.iter().map(|&z| BigInt::from(z)).collect();
    zeros.sort();
    let certificate = Certificate {
        input: InputEcho { coefficients: input.coefficients.clone(), initial: input.initial.clone() },
        working: WorkingSpec {
            coefficients: working.recurrence.coeffs().to_vec(),
            initial: engine.w.init.clone(),
            ell: norm.ell,
            scale: norm.scale,
        },
        zeros: zeros.clone(),
        entries: engine.entries,
    };
    Ok(Outcome { kind: OutcomeKind::Solved { zeros, certificate }, stats })
}

/// A random recurrence of the given order with coefficients and initial
/// values uniform in `lo..=hi`; a zero constant coefficient is redrawn.
pub fn random_instance(order: usize, lo: i64, hi: i64, seed: u64) -> Result<SequenceSpec> {
    if order == 0 || lo > hi || (lo == 0 && hi == 0) {
        return Err(Error::invalid("random_instance needs order ≥ 1 and a range containing a nonzero value"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs: Vec<i64> = (0..order).map(|_| rng.gen_range(lo..=hi)).collect();
    while coeffs[order - 1] == 0 {
        coeffs[order - 1] = rng.gen_range(lo..=hi);
    }
    let initial: Vec<BigRational> = (0..order).map(|_| BigRational::from_integer(rng.gen_range(lo..=hi).into())).collect();
    SequenceSpec::new(Recurrence::from_i64(&coeffs)?, initial)
}

impl From<&SequenceSpec> for InputSpec {
    fn from(s: &SequenceSpec) -> Self {
        InputSpec {
            coefficients: s.recurrence.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect(),
            initial: s.initial.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certs::verify;
    use num_traits::Zero;

    fn solve(c: &[i64], u: &[i64]) -> Outcome {
        find_all_zeros(&InputSpec::from_i64(c, u), &SolveConfig::default()).unwrap()
    }

    fn check(c: &[i64], u: &[i64], want: &[i64]) -> Outcome {
        let out = solve(c, u);
        let zeros: Vec<BigInt> = want.iter().map(|&z| z.into()).collect();
        assert_eq!(out.zeros(), Some(&zeros[..]), "{out}");
        let cert = out.certificate().unwrap();
        let v = verify(&cert.input, cert);
        assert!(v.is_accept(), "{v:?}");
        out
    }

    #[test]
    fn small_sequences() {
        check(&[1, 1], &[0, 1], &[0]);
        check(&[1], &[1], &[]);
        check(&[3, -2], &[-2, -1], &[]);
        check(&[2, 3], &[1, -2], &[]);
    }

    #[test]
    fn example_one() {
        let out = check(&[9, -10, 522, -4745, 4225], &[-30, -27, 0, 469, 1762], &[2]);
        assert_eq!(out.stats.tree_depth, 2);
    }

    #[test]
    fn degenerate_and_friends() {
        assert_eq!(solve(&[0, 4], &[2, 0]).kind, OutcomeKind::Degenerate);
        assert_eq!(solve(&[2, -1], &[0, 1]).kind, OutcomeKind::NotSimple);
        assert_eq!(solve(&[1, 1], &[0, 0]).kind, OutcomeKind::IdenticallyZero);
    }

    #[test]
    fn zero_proof_path() {
        // u_n = 2^n (1 − 2^n)^2 has a double zero at 0, so a_1 vanishes
        let out = check(&[14, -56, 64], &[0, 2, 36], &[0]);
        let cert = out.certificate().unwrap();
        let (_, v) = cert.valuation_entries().next().unwrap();
        assert_eq!(v.j0, 2);
        assert_eq!(v.zero_proofs.len(), 1);
    }

    #[test]
    fn simple_zero_needs_no_proof() {
        // u_n = 2·2^n − 4^n: the zero at 1 is simple, a_1 = −4L·log 2
        let out = check(&[6, -8], &[1, 0], &[1]);
        let (_, v) = out.certificate().unwrap().valuation_entries().next().unwrap();
        assert_eq!(v.j0, 1);
        assert!(v.zero_proofs.is_empty());
    }

    #[test]
    fn rational_input() {
        // u_n = (1/2)^n − 1/4^n·… : coefficients 3/4, −1/8
        let input = InputSpec {
            coefficients: vec![BigRational::new(3.into(), 4.into()), BigRational::new((-1).into(), 8.into())],
            initial: vec![BigRational::from_integer(0.into()), BigRational::new(1.into(), 4.into())],
        };
        let out = find_all_zeros(&input, &SolveConfig::default()).unwrap();
        let cert = out.certificate().expect("solved");
        assert!(verify(&cert.input, cert).is_accept());
        assert_eq!(out.zeros().unwrap(), &[BigInt::from(0)]);
    }

    #[test]
    fn random_instances_are_deterministic() {
        let a = random_instance(3, -20, 20, 7).unwrap();
        let b = random_instance(3, -20, 20, 7).unwrap();
        assert_eq!(a, b);
        assert!(!a.recurrence.constant_coeff().is_zero());
    }
}
