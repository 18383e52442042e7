use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::primes::{factorize, is_prime, lcm_u64, multiplicative_order, odd_primes_from};
use crate::algebra::{splits_completely_mod_p, squarefree_part, IntMatrix, ModPoly};
use crate::error::{Error, Result};
use crate::lrs::SequenceSpec;

/// How the p-adic prime is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeStrategy {
    Smallest,
    /// Smallest admissible prime strictly greater than the bound.
    SmallestAbove(u64),
    Fixed(u64),
}

impl Default for PrimeStrategy {
    fn default() -> Self {
        PrimeStrategy::Smallest
    }
}

/// Default upper limit on candidate primes.
pub const DEFAULT_PRIME_CAP: u64 = 200_000;

/// Admissibility of `p` for the recurrence itself: `p` odd, `p ∤ c_d`,
/// `p ∤ disc(sqfree g)` and `sqfree g` splits mod `p`.
pub fn is_admissible(spec: &SequenceSpec, p: u64) -> bool {
    if p < 3 || !is_prime(p) {
        return false;
    }
    let cd = spec.recurrence.constant_coeff();
    if (cd % BigInt::from(p)).is_zero() {
        return false;
    }
    let Ok(h) = squarefree_part(&spec.recurrence.charpoly()) else {
        return false;
    };
    let Ok(hb) = ModPoly::from_unipoly(&h, p) else {
        return false;
    };
    if hb.degree() != h.degree() || !hb.is_squarefree() {
        return false;
    }
    splits_completely_mod_p(&h, p).unwrap_or(false)
}

/// Smallest admissible odd prime for `spec` under `strategy`, up to `cap`.
pub fn select_prime(spec: &SequenceSpec, strategy: PrimeStrategy, cap: u64) -> Result<u64> {
    match strategy {
        PrimeStrategy::Fixed(p) => {
            if is_admissible(spec, p) {
                Ok(p)
            } else {
                Err(Error::invalid(format!("prime {p} is not admissible for this recurrence")))
            }
        }
        PrimeStrategy::Smallest | PrimeStrategy::SmallestAbove(_) => {
            let from = match strategy {
                PrimeStrategy::SmallestAbove(k) => k + 1,
                _ => 3,
            };
            odd_primes_from(from)
                .take_while(|&p| p <= cap)
                .find(|&p| is_admissible(spec, p))
                .ok_or_else(|| Error::ResourceLimit { what: "admissible prime search".into(), cap })
        }
    }
}

/// Admissibility of `p` for a matrix `A` whose determinant is a unit times a
/// power of `c_d`: `p` odd, `p ∤ c_d`, and the characteristic polynomial of
/// `A mod p` squarefree and split. Returns the distinct eigenvalues mod `p`.
pub fn matrix_admissible(a_mod_p: &IntMatrix, cd: &BigInt, p: u64) -> Option<Vec<u64>> {
    if p < 3 || !is_prime(p) || (cd % BigInt::from(p)).is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let cp = ModPoly::from_bigints(p, &a_mod_p.charpoly(Some(&pb)));
    if !cp.is_squarefree() || !cp.splits() {
        return None;
    }
    let roots = cp.distinct_roots();
    (roots.len() as i64 == cp.degree() && roots.iter().all(|&r| r != 0)).then_some(roots)
}

/// Least `L` with `A^L ≡ I (mod p)`.
///
/// When the characteristic polynomial is squarefree and split mod `p`, `A` is
/// diagonalizable over 𝔽_p and `L` is the lcm of the eigenvalue orders.
/// Otherwise the order is found inside a known multiple by divisor pruning.
pub fn matrix_order_mod_p(a: &IntMatrix, p: u64) -> Result<u64> {
    if !is_prime(p) || p < 3 {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    let pb = BigInt::from(p);
    let am = a.reduce_mod(&pb);
    let cp = ModPoly::from_bigints(p, &am.charpoly(Some(&pb)));
    if cp.coeffs().first().copied().unwrap_or(0) == 0 {
        return Err(Error::invalid(format!("matrix is singular mod {p}")));
    }
    if cp.is_squarefree() && cp.splits() {
        let l = cp
            .distinct_roots()
            .into_iter()
            .map(|r| multiplicative_order(r, p).unwrap())
            .fold(1, lcm_u64);
        return Ok(l);
    }
    // multiple of the order: p^e · lcm_{k ≤ n} (p^k − 1), p^e ≥ n
    let n = a.size() as u32;
    let mut exps: std::collections::BTreeMap<u64, u32> = Default::default();
    let mut pe = 1u64;
    let mut e = 0u32;
    while pe < n as u64 {
        pe = pe.saturating_mul(p);
        e += 1;
    }
    if e > 0 {
        exps.insert(p, e);
    }
    for k in 1..=n {
        let pk = (p as u128).pow(k) - 1;
        let pk = u64::try_from(pk).map_err(|_| Error::ResourceLimit {
            what: "matrix order search".into(),
            cap: u64::MAX,
        })?;
        for (q, m) in factorize(pk) {
            let slot = exps.entry(q).or_insert(0);
            *slot = (*slot).max(m);
        }
    }
    let total = |ex: &std::collections::BTreeMap<u64, u32>| {
        ex.iter().fold(BigInt::from(1), |acc, (&q, &m)| acc * num_traits::pow(BigInt::from(q), m as usize))
    };
    if !am.pow_mod_big(&total(&exps), &pb).is_identity() {
        return Err(Error::internal("matrix order does not divide the group exponent"));
    }
    let primes: Vec<u64> = exps.keys().copied().collect();
    for q in primes {
        loop {
            let m = exps[&q];
            if m == 0 {
                break;
            }
            exps.insert(q, m - 1);
            if !am.pow_mod_big(&total(&exps), &pb).is_identity() {
                exps.insert(q, m);
                break;
            }
        }
    }
    total(&exps)
        .to_u64()
        .ok_or_else(|| Error::ResourceLimit { what: "matrix order".into(), cap: u64::MAX })
}

/// `B = (A^L − I)/p`, exactly.
pub fn b_matrix(a: &IntMatrix, l: u64, p: u64) -> Result<IntMatrix> {
    let al = a.pow(l).sub(&IntMatrix::identity(a.size()));
    al.div_exact(&BigInt::from(p))
        .ok_or_else(|| Error::internal(format!("A^{l} - I is not divisible by {p}")))
}

/// `B mod p^prec` from `A^L mod p^{prec+1}`.
pub fn b_matrix_mod(a_pow_l: &IntMatrix, p: u64, prec: u32) -> Result<IntMatrix> {
    let pb = BigInt::from(p);
    let modulus = num_traits::pow(pb.clone(), prec as usize);
    let al = a_pow_l.sub(&IntMatrix::identity(a_pow_l.size()));
    let b = al
        .entries()
        .iter()
        .map(|x| {
            let (q, r) = x.div_rem(&pb);
            r.is_zero().then(|| q.mod_floor(&modulus))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::internal(format!("A^L - I is not divisible by {p}")))?;
    let n = a_pow_l.size();
    Ok(IntMatrix::from_rows(b.chunks(n).map(|r| r.to_vec()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn select_prime_examples() {
        let fib = SequenceSpec::from_i64(&[1, 1], &[0, 1]).unwrap();
        assert_eq!(select_prime(&fib, PrimeStrategy::Smallest, 1000).unwrap(), 11);
        let five = SequenceSpec::from_i64(&[0, 5], &[1, 0]).unwrap();
        assert!(!is_admissible(&five, 5));
        let lin = SequenceSpec::from_i64(&[2], &[1]).unwrap();
        assert_eq!(select_prime(&lin, PrimeStrategy::Smallest, 1000).unwrap(), 3);
        assert_eq!(select_prime(&fib, PrimeStrategy::SmallestAbove(11), 1000).unwrap(), 19);
        assert!(select_prime(&fib, PrimeStrategy::Fixed(7), 1000).is_err());
        assert!(matches!(
            select_prime(&fib, PrimeStrategy::SmallestAbove(12), 15),
            Err(Error::ResourceLimit { cap: 15, .. })
        ));
    }

    #[test]
    fn order_examples() {
        let fib = IntMatrix::companion(&ints(&[1, 1]));
        assert_eq!(matrix_order_mod_p(&fib, 11).unwrap(), 10);
        assert_eq!(matrix_order_mod_p(&IntMatrix::identity(3), 13).unwrap(), 1);
        assert_eq!(matrix_order_mod_p(&IntMatrix::companion(&ints(&[2])), 7).unwrap(), 3);
        // non-split: Fibonacci mod 7 has Pisano period 16
        assert_eq!(matrix_order_mod_p(&fib, 7).unwrap(), 16);
        // repeated eigenvalue mod 5: (X - 3)^2 has unipotent part
        assert_eq!(matrix_order_mod_p(&fib, 5).unwrap(), 20);
        assert!(matrix_order_mod_p(&IntMatrix::companion(&ints(&[1, 7])), 7).is_err());
    }

    #[test]
    fn b_matrix_examples() {
        let fib = IntMatrix::companion(&ints(&[1, 1]));
        let b = b_matrix(&fib, 10, 11).unwrap();
        assert_eq!(b.scale(&BigInt::from(11)), fib.pow(10).sub(&IntMatrix::identity(2)));
        // A = I + pC, L = 1 gives back C
        let c = IntMatrix::from_rows(vec![ints(&[1, -2]), ints(&[4, 0])]);
        let a = IntMatrix::identity(2).sub(&c.scale(&BigInt::from(-7)));
        assert_eq!(b_matrix(&a, 1, 7).unwrap(), c);
        // A^{2L} = I + 2pB + p^2 B^2
        let p2 = BigInt::from(121);
        let lhs = fib.pow(20).sub(&IntMatrix::identity(2));
        let rhs = b.scale(&BigInt::from(22)).sub(&b.mul(&b).scale(&(-p2)));
        assert_eq!(lhs, rhs);
        assert!(b_matrix(&fib, 3, 11).is_err());
        let m = BigInt::from(11).pow(4);
        assert_eq!(b_matrix_mod(&fib.pow_mod(10, &m), 11, 3).unwrap(), b.reduce_mod(&BigInt::from(1331)));
    }
}
