//! Certification of a single zero: prime choice, leading series coefficient,
//! and the jump `M` after which the zero is isolated in its progression.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::primes::odd_primes_from;
use crate::certs::{RelationData, ValuationWitness, ZeroProofData};
use crate::error::{Error, Result};
use crate::lrs::SequenceSpec;
use crate::numfield::{FjOutcome, SymbolicConfig, SymbolicContext, ZeroProof};
use crate::padic::{
    coefficient_valuation, jump_exponent, matrix_admissible, matrix_order_mod_p, CoefficientResult, NodeSeries,
    PrimeStrategy, DEFAULT_PRIME_CAP,
};

/// Largest series coefficient index examined at one zero.
const MAX_COEFFICIENT: usize = 64;

/// Admissible prime for `A^stride` and the order `L` of `A^stride` mod `p`.
/// The boolean reports that a requested fixed prime had to be abandoned.
pub(crate) fn node_prime(spec: &SequenceSpec, stride: &BigInt, strategy: PrimeStrategy) -> Result<(u64, u64, bool)> {
    let comp = spec.recurrence.companion();
    let cd = spec.recurrence.constant_coeff();
    let admissible = |p: u64| {
        let a = comp.pow_mod_big(stride, &BigInt::from(p));
        matrix_admissible(&a, &cd, p).map(|_| a)
    };
    let (first, from) = match strategy {
        PrimeStrategy::Fixed(p) => (Some(p), 3),
        PrimeStrategy::Smallest => (None, 3),
        PrimeStrategy::SmallestAbove(b) => (None, b + 1),
    };
    if let Some(p) = first {
        if let Some(a) = admissible(p) {
            return Ok((p, matrix_order_mod_p(&a, p)?, false));
        }
    }
    for p in odd_primes_from(from).take_while(|&p| p <= DEFAULT_PRIME_CAP) {
        if let Some(a) = admissible(p) {
            return Ok((p, matrix_order_mod_p(&a, p)?, first.is_some()));
        }
    }
    Err(Error::ResourceLimit { what: "admissible prime search".into(), cap: DEFAULT_PRIME_CAP })
}

pub(crate) struct JumpRequest<'a> {
    pub spec: &'a SequenceSpec,
    pub center: i64,
    pub stride: BigInt,
    pub strategy: PrimeStrategy,
    pub max_terms: u64,
    pub max_terms_cap: u64,
    pub symbolic: SymbolicConfig,
}

/// Result of certifying one zero.
pub(crate) struct Jump {
    pub witness: ValuationWitness,
    /// `L·p^e`.
    pub jump: BigInt,
    pub prime_fallback: bool,
}

/// Lazily built symbolic context, shared across the zeros of one solve.
#[derive(Default)]
pub(crate) struct LazySymbolic(Option<std::result::Result<SymbolicContext, Error>>);

impl LazySymbolic {
    fn get(&mut self, spec: &SequenceSpec, cfg: SymbolicConfig) -> Result<&SymbolicContext> {
        let slot = self.0.get_or_insert_with(|| SymbolicContext::build(spec, cfg));
        slot.as_ref().map_err(|e| e.clone())
    }
}

pub(crate) fn zero_proof_data(z: &ZeroProof) -> ZeroProofData {
    let v = |p: &crate::algebra::UniPoly| -> Vec<BigRational> { p.coeffs().to_vec() };
    ZeroProofData {
        j: z.j,
        modulus: v(&z.modulus),
        roots: z.roots.iter().map(v).collect(),
        alphas: z.alphas.iter().map(v).collect(),
        independent: z.independent.clone(),
        relations: z
            .relations
            .iter()
            .map(|r| RelationData { index: r.index, m: r.m.clone(), n: r.n.clone(), torsion: r.torsion })
            .collect(),
    }
}

/// Certify the zero at `center` of the progression with step `stride`:
/// find the first coefficient `a_{j0}` of nonzero valuation `ν`, proving the
/// lower ones vanish, and the least `e` making it dominate after `x = p^e·y`.
pub(crate) fn jump_step(req: &JumpRequest, symbolic: &mut LazySymbolic) -> Result<Jump> {
    let (p, l, prime_fallback) = node_prime(req.spec, &req.stride, req.strategy)?;
    let series = NodeSeries { spec: req.spec, stride: req.stride.clone(), center: req.center, p, l };
    let mut proofs = Vec::new();
    let mut terms = req.max_terms;
    let mut j = 1;
    let cert = loop {
        if j > MAX_COEFFICIENT {
            return Err(Error::ResourceLimit { what: "series coefficient index".into(), cap: MAX_COEFFICIENT as u64 });
        }
        match coefficient_valuation(&series, j, terms)? {
            CoefficientResult::Certified(c) => break c,
            CoefficientResult::ProbablyZero { .. } => {
                let ctx = symbolic.get(req.spec, req.symbolic)?;
                match ctx.test(req.center, j)? {
                    FjOutcome::IdenticallyZero(proof) => {
                        proofs.push(zero_proof_data(&proof));
                        j += 1;
                    }
                    FjOutcome::NotIdenticallyZero { .. } => {
                        if terms >= req.max_terms_cap {
                            return Err(Error::ResourceLimit {
                                what: "series terms for a coefficient that is not provably zero".into(),
                                cap: req.max_terms_cap,
                            });
                        }
                        terms = (terms * 2).min(req.max_terms_cap);
                    }
                }
            }
        }
    };
    let e = jump_exponent(cert.nu, cert.j, p);
    let jump = BigInt::from(l) * num_traits::pow(BigInt::from(p), e as usize);
    Ok(Jump {
        witness: ValuationWitness {
            center: BigInt::from(req.center),
            stride: req.stride.clone(),
            p,
            l,
            e,
            nu: cert.nu,
            j0: cert.j,
            terms_used: cert.terms_used,
            zero_proofs: proofs,
        },
        jump,
        prime_fallback,
    })
}
