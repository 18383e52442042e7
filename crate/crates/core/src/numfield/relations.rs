use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::exppoly::masser_bound;
use super::field::AlgebraicNumber;
use super::lll::lll_reduce;
use crate::algebra::matrix::row_echelon;
use crate::algebra::modp::ModPoly;
use crate::algebra::primes::{lcm_u64, multiplicative_order, odd_primes_from};
use crate::algebra::valuation::{int_valuation, mod_inverse, reduce_rational_mod};
use crate::algebra::zpoly;
use crate::error::{Error, Result};
use crate::padic::padic_log;

const EMBEDDING_PRIME_CAP: u64 = 1_000_000;

/// `λ_index^{T·m} = ∏_k λ_{independent[k]}^{T·n_k}`, with `T` the order of the
/// root of unity left over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerRelation {
    pub index: usize,
    pub m: BigInt,
    pub n: Vec<BigInt>,
    pub torsion: u64,
}

/// Whether the relation lattice found is known to be complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Maximality {
    /// Every relation up to the generator bound lies in the span found.
    Certified,
    /// Search limited by the exponent cap; soundness is unaffected.
    Capped,
}

/// Multiplicatively independent subset of the roots, with an integer relation
/// expressing each remaining root over it.
#[derive(Clone, Debug)]
pub struct RelationBasis {
    pub independent: Vec<usize>,
    pub relations: Vec<IntegerRelation>,
    pub maximality: Maximality,
}

impl RelationBasis {
    /// For each root, the rational coefficients `q_ik` with
    /// `log μ_i = Σ_k q_ik log μ_{independent[k]}`.
    pub fn linear_forms(&self, s: usize) -> Vec<Vec<BigRational>> {
        let t = self.independent.len();
        let mut out = vec![vec![BigRational::zero(); t]; s];
        for (k, &i) in self.independent.iter().enumerate() {
            out[i][k] = BigRational::one();
        }
        for r in &self.relations {
            out[r.index] = r.n.iter().map(|n| BigRational::new(n.clone(), r.m.clone())).collect();
        }
        out
    }
}

/// `∏ λ_i^{k_i}`.
pub fn monomial(roots: &[AlgebraicNumber], k: &[BigInt]) -> Option<AlgebraicNumber> {
    let mut acc = roots.first()?.field().one();
    for (r, e) in roots.iter().zip(k) {
        if !e.is_zero() {
            acc = acc.mul(&r.pow(e)?);
        }
    }
    Some(acc)
}

/// Check a relation exactly in the ring.
pub fn check_relation(roots: &[AlgebraicNumber], independent: &[usize], rel: &IntegerRelation) -> bool {
    if rel.n.len() != independent.len() || rel.m.is_zero() || rel.index >= roots.len() {
        return false;
    }
    let t = BigInt::from(rel.torsion);
    let mut k = vec![BigInt::zero(); roots.len()];
    k[rel.index] += &rel.m * &t;
    for (&i, n) in independent.iter().zip(&rel.n) {
        if i >= roots.len() {
            return false;
        }
        k[i] -= n * &t;
    }
    monomial(roots, &k).is_some_and(|z| z.is_one())
}

/// A ring homomorphism `ℚ[θ]/(h) → ℤ/q^prec` sending `θ` to a lifted root of `h`.
struct Embedding {
    q: u64,
    t: BigInt,
    modulus: BigInt,
}

impl Embedding {
    fn find(roots: &[AlgebraicNumber], prec: impl Fn(u64) -> u32) -> Result<Self> {
        let field = roots[0].field();
        let (hz, _) = field.modulus().to_primitive_integer();
        let dh = zpoly::derivative(&hz);
        'primes: for q in odd_primes_from(3) {
            if q > EMBEDDING_PRIME_CAP {
                break;
            }
            let qb = BigInt::from(q);
            if (hz.last().unwrap() % &qb).is_zero() {
                continue;
            }
            let hb = ModPoly::from_bigints(q, &hz);
            if !hb.is_squarefree() {
                continue;
            }
            let Some(&t0) = hb.distinct_roots().first() else { continue };
            let prec = prec(q);
            let modulus = num_traits::pow(qb.clone(), prec as usize);
            // Newton lift of the simple root t0
            let mut t = BigInt::from(t0);
            let mut cur = qb.clone();
            while cur < modulus {
                cur = (&cur * &cur).min(modulus.clone());
                let fv = zpoly::eval(&hz, &t).mod_floor(&cur);
                let dv = zpoly::eval(&dh, &t).mod_floor(&cur);
                let inv = mod_inverse(&dv, &cur).expect("simple root");
                t = (t - fv * inv).mod_floor(&cur);
            }
            let emb = Embedding { q, t, modulus };
            for r in roots {
                match emb.image(r) {
                    Some(v) if !(&v % &qb).is_zero() => {}
                    _ => continue 'primes,
                }
            }
            return Ok(emb);
        }
        Err(Error::ResourceLimit { what: "embedding prime search".into(), cap: EMBEDDING_PRIME_CAP })
    }

    fn image(&self, x: &AlgebraicNumber) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for c in x.rep().coeffs().iter().rev() {
            acc = (acc * &self.t + reduce_rational_mod(c, &self.modulus)?).mod_floor(&self.modulus);
        }
        Some(acc)
    }

    fn residue(&self, x: &AlgebraicNumber) -> Option<u64> {
        self.image(x).map(|v| (v % BigInt::from(self.q)).to_u64().unwrap())
    }

    /// Order of `x` if it is a root of unity. Roots of unity in `ℚ_q` have
    /// order prime to `q`, so the order equals that of the residue.
    fn torsion_order(&self, x: &AlgebraicNumber) -> Option<u64> {
        let o = multiplicative_order(self.residue(x)?, self.q)?;
        x.pow(&BigInt::from(o))?.is_one().then_some(o)
    }
}

/// Multiplicative relations among `roots`, found as short vectors of the
/// lattice of integer vectors whose `q`-adic log combination vanishes to high
/// precision, then verified exactly. `height` bounds the Weil height of every
/// root and only affects the maximality flag.
pub fn multiplicative_relations(roots: &[AlgebraicNumber], exponent_cap: u64, height: f64) -> Result<RelationBasis> {
    let s = roots.len();
    if s == 0 {
        return Ok(RelationBasis { independent: vec![], relations: vec![], maximality: Maximality::Certified });
    }
    let cap = exponent_cap.max(1);
    let sf = s as f64;
    let need = sf * ((cap as f64 * sf).ln() + sf * 0.7) + 16.0;
    let emb = Embedding::find(roots, |q| (need / (q as f64).ln()).ceil() as u32 + 3)?;
    let q = emb.q;
    let prec = int_valuation(&emb.modulus, q).unwrap() as u32 - 1;
    let mut order = 1u64;
    for r in roots {
        let res = emb.residue(r).ok_or_else(|| Error::internal("root does not reduce"))?;
        order = lcm_u64(order, multiplicative_order(res, q).unwrap());
    }
    let logs: Vec<BigInt> = roots
        .iter()
        .map(|r| {
            let mu = emb.image(r).unwrap().modpow(&BigInt::from(order), &emb.modulus);
            padic_log(&mu, q, prec)
        })
        .collect::<Result<_>>()?;
    let qb = BigInt::from(q);
    let basis: Vec<Vec<BigInt>> = match logs.iter().filter_map(|l| int_valuation(l, q)).min() {
        None => (0..s).map(|i| unit_vector(s, i, BigInt::one())).collect(),
        Some(v) => {
            let big_q = num_traits::pow(qb.clone(), (prec as u64 - v) as usize);
            let scale = num_traits::pow(qb.clone(), v as usize);
            let red: Vec<BigInt> = logs.iter().map(|l| (l / &scale).mod_floor(&big_q)).collect();
            let i0 = red.iter().position(|l| !(l % &qb).is_zero()).unwrap();
            let inv = mod_inverse(&red[i0], &big_q).unwrap();
            (0..s)
                .map(|i| {
                    if i == i0 {
                        unit_vector(s, i0, big_q.clone())
                    } else {
                        let mut row = unit_vector(s, i, BigInt::one());
                        row[i0] = -(&red[i] * &inv).mod_floor(&big_q);
                        row
                    }
                })
                .collect()
        }
    };
    let (reduced, norms) = lll_reduce(basis);
    let cap_b = BigInt::from(cap);
    let mut verified: Vec<Vec<BigInt>> = Vec::new();
    let mut prefix = true;
    let mut first_unverified = None;
    for (idx, row) in reduced.iter().enumerate() {
        let ok = row.iter().any(|x| !x.is_zero())
            && row.iter().all(|x| x.abs() <= cap_b)
            && monomial(roots, row).and_then(|z| emb.torsion_order(&z)).is_some();
        if ok {
            verified.push(row.clone());
            if first_unverified.is_some() {
                prefix = false;
            }
        } else if first_unverified.is_none() {
            first_unverified = Some(idx);
        }
    }
    let maximality = {
        let b = masser_bound(s, height, roots[0].field().degree(), 1.0);
        let b2 = BigRational::from_integer(&b * &b);
        let tail_ok = norms[verified.len()..].iter().all(|n| *n > b2);
        if prefix && tail_ok {
            Maximality::Certified
        } else {
            Maximality::Capped
        }
    };

    // greedy independent subset and the relation expressing each other root
    let rel_rows: Vec<Vec<BigRational>> = verified
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut independent: Vec<usize> = Vec::new();
    let mut forms: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for i in 0..s {
        match dependence(&rel_rows, &independent, i, s) {
            Some(coeffs) => forms.push((i, coeffs)),
            None => independent.push(i),
        }
    }
    let mut relations = Vec::with_capacity(forms.len());
    for (i, coeffs) in forms {
        let m = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut n: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(m.clone())).to_integer()).collect();
        // roots made independent after `i` do not occur in its relation
        n.resize(independent.len(), BigInt::zero());
        let mut k = vec![BigInt::zero(); s];
        k[i] = m.clone();
        for (&j, nj) in independent.iter().zip(&n) {
            k[j] = -nj.clone();
        }
        let zeta = monomial(roots, &k).ok_or_else(|| Error::internal("root is not a unit"))?;
        let torsion = emb
            .torsion_order(&zeta)
            .ok_or_else(|| Error::internal("combined relation failed exact check"))?;
        relations.push(IntegerRelation { index: i, m, n, torsion });
    }
    Ok(RelationBasis { independent, relations, maximality })
}

fn unit_vector(s: usize, i: usize, v: BigInt) -> Vec<BigInt> {
    let mut row = vec![BigInt::zero(); s];
    row[i] = v;
    row
}

/// If some relation involves only `independent ∪ {i}` with nonzero
/// coefficient on `i`, the coefficients `q_k` with `v_i = Σ q_k v_{independent[k]}`.
fn dependence(rows: &[Vec<BigRational>], independent: &[usize], i: usize, s: usize) -> Option<Vec<BigRational>> {
    if rows.is_empty() {
        return None;
    }
    let others: Vec<usize> = (0..s).filter(|j| *j != i && !independent.contains(j)).collect();
    let order: Vec<usize> = others.iter().copied().chain([i]).chain(independent.iter().copied()).collect();
    let permuted: Vec<Vec<BigRational>> = rows.iter().map(|r| order.iter().map(|&c| r[c].clone()).collect()).collect();
    let (red, piv) = row_echelon(permuted);
    let col = others.len();
    let r = piv.iter().position(|&c| c == col)?;
    Some((0..independent.len()).map(|k| -red[r][col + 1 + k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::splitting_field;

    fn ring(g: &[i64]) -> Vec<AlgebraicNumber> {
        let g: Vec<BigInt> = g.iter().map(|&x| x.into()).collect();
        splitting_field(&g, 50).unwrap().roots
    }

    #[test]
    fn golden_ratio_conjugates() {
        // φ·φ̄ = −1, so φ̄² = φ^{−2}
        let roots = ring(&[-1, -1, 1]);
        let b = multiplicative_relations(&roots, 50, 1.0).unwrap();
        assert_eq!(b.independent.len(), 1);
        assert_eq!(b.relations.len(), 1);
        let rel = &b.relations[0];
        assert!(check_relation(&roots, &b.independent, rel));
        assert_eq!(&rel.n[0] / &rel.m, BigInt::from(-1));
        assert_eq!(rel.torsion, 2);
    }

    #[test]
    fn independent_integers() {
        // roots 2 and 3 are multiplicatively independent
        let roots = ring(&[6, -5, 1]);
        let b = multiplicative_relations(&roots, 100, 2.0).unwrap();
        assert_eq!(b.independent.len(), 2);
        assert!(b.relations.is_empty());
    }

    #[test]
    fn powers_are_related() {
        // roots 2, 4, 8: rank one
        let roots = ring(&[-64, 56, -14, 1]);
        let b = multiplicative_relations(&roots, 100, 3.0).unwrap();
        assert_eq!(b.independent.len(), 1);
        for r in &b.relations {
            assert!(check_relation(&roots, &b.independent, r));
        }
        let forms = b.linear_forms(3);
        let i = b.independent[0];
        let two = roots.iter().position(|r| *r == r.field().from_int(&2.into())).unwrap();
        let eight = roots.iter().position(|r| *r == r.field().from_int(&8.into())).unwrap();
        if i == two {
            assert_eq!(forms[eight][0], BigRational::from_integer(3.into()));
        }
    }

    #[test]
    fn roots_of_unity_are_torsion() {
        // X² + 1: i and −i, both torsion
        let roots = ring(&[1, 0, 1]);
        let b = multiplicative_relations(&roots, 10, 0.0).unwrap();
        assert!(b.independent.is_empty());
        for r in &b.relations {
            assert!(check_relation(&roots, &b.independent, r));
        }
    }
}
