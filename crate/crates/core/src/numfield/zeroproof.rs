use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::exppoly::exp_poly_coefficients;
use super::field::AlgebraicNumber;
use super::relations::{multiplicative_relations, IntegerRelation, Maximality, RelationBasis};
use super::splitting::{splitting_field, SplittingRing};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use crate::lrs::SequenceSpec;

/// Exact evidence that the series coefficient `a_j` at a node vanishes:
/// a splitting ring with the roots and exponential-polynomial coefficients of
/// the sequence, and integer relations among the roots. With
/// `q_ik = n_ik/m_i`, every coefficient of `Σ_i α_i λ_i^center (Σ_k q_ik x_k)^j`
/// is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroProof {
    pub modulus: UniPoly,
    pub roots: Vec<UniPoly>,
    pub alphas: Vec<UniPoly>,
    pub center: i64,
    pub j: usize,
    pub independent: Vec<usize>,
    pub relations: Vec<IntegerRelation>,
}

/// Outcome of the symbolic test for one coefficient.
#[derive(Clone, Debug)]
pub enum FjOutcome {
    IdenticallyZero(ZeroProof),
    /// Some coefficient of the polynomial in the independent logarithms is
    /// nonzero; `a_j` may still vanish.
    NotIdenticallyZero { monomial: Vec<u32> },
}

/// All `μ ∈ ℕ^t` with `|μ| = j`, in lexicographic order.
pub fn compositions(j: usize, t: usize) -> Vec<Vec<u32>> {
    fn rec(left: usize, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=left).rev() {
            cur.push(v as u32);
            rec(left - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(j, t, &mut Vec::new(), &mut out);
    out
}

/// First multi-index `μ` with `Σ_i α_i ∏_k q_ik^{μ_k} ≠ 0`, or `None` if the
/// degree-`j` form vanishes identically.
pub fn f_j_identically_zero(alphas: &[AlgebraicNumber], forms: &[Vec<BigRational>], t: usize, j: usize) -> Option<Vec<u32>> {
    let field = alphas.first()?.field();
    for mu in compositions(j, t) {
        let mut c = field.zero();
        for (a, q) in alphas.iter().zip(forms) {
            let mut w = BigRational::from_integer(1.into());
            for (qk, &e) in q.iter().zip(&mu) {
                w *= num_traits::pow(qk.clone(), e as usize);
            }
            if !w.is_zero() {
                c = c.add(&a.scale(&w));
            }
        }
        if !c.is_zero() {
            return Some(mu);
        }
    }
    None
}

#[derive(Clone, Copy, Debug)]
pub struct SymbolicConfig {
    /// Largest splitting ring degree attempted.
    pub degree_cap: usize,
    /// Largest exponent accepted in a relation vector from lattice reduction.
    pub exponent_cap: u64,
}

impl Default for SymbolicConfig {
    fn default() -> Self {
        SymbolicConfig { degree_cap: 120, exponent_cap: 1000 }
    }
}

/// Splitting ring, exponential-polynomial coefficients and relations for one
/// sequence; built once and shared by all nodes.
#[derive(Clone, Debug)]
pub struct SymbolicContext {
    ring: SplittingRing,
    alphas: Vec<AlgebraicNumber>,
    basis: RelationBasis,
    forms: Vec<Vec<BigRational>>,
}

impl SymbolicContext {
    pub fn build(spec: &SequenceSpec, cfg: SymbolicConfig) -> Result<Self> {
        let g = spec.recurrence.charpoly_ints();
        let ring = splitting_field(&g, cfg.degree_cap)?;
        let alphas = exp_poly_coefficients(&ring.field, &ring.roots, &spec.initial)?;
        let norm2: f64 = g.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY).powi(2)).sum::<f64>().sqrt();
        let basis = multiplicative_relations(&ring.roots, cfg.exponent_cap, norm2.ln().max(0.0))?;
        let forms = basis.linear_forms(ring.roots.len());
        Ok(SymbolicContext { ring, alphas, basis, forms })
    }

    pub fn ring(&self) -> &SplittingRing {
        &self.ring
    }

    pub fn alphas(&self) -> &[AlgebraicNumber] {
        &self.alphas
    }

    pub fn relations(&self) -> &RelationBasis {
        &self.basis
    }

    pub fn maximality(&self) -> Maximality {
        self.basis.maximality
    }

    /// `α_i λ_i^center`: the coefficients of the shifted sequence.
    pub fn node_alphas(&self, center: i64) -> Result<Vec<AlgebraicNumber>> {
        self.alphas
            .iter()
            .zip(&self.ring.roots)
            .map(|(a, r)| Ok(a.mul(&r.pow(&BigInt::from(center)).ok_or_else(|| Error::internal("root is not a unit"))?)))
            .collect()
    }

    pub fn test(&self, center: i64, j: usize) -> Result<FjOutcome> {
        let na = self.node_alphas(center)?;
        Ok(match f_j_identically_zero(&na, &self.forms, self.basis.independent.len(), j) {
            Some(monomial) => FjOutcome::NotIdenticallyZero { monomial },
            None => FjOutcome::IdenticallyZero(ZeroProof {
                modulus: self.ring.field.modulus().clone(),
                roots: self.ring.roots.iter().map(|r| r.rep().clone()).collect(),
                alphas: self.alphas.iter().map(|a| a.rep().clone()).collect(),
                center,
                j,
                independent: self.basis.independent.clone(),
                relations: self.basis.relations.clone(),
            }),
        })
    }
}
