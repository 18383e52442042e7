use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::algebra::modp::ModPoly;
use crate::algebra::primes::odd_primes_from;
use crate::algebra::zpoly::{self, ZPoly};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use crate::padic::hensel_lift_roots;

/// Search limit for a prime at which the polynomial splits into distinct
/// linear factors.
const SPLIT_PRIME_CAP: u64 = 5_000_000;

/// Irreducible factors over ℚ of a monic squarefree integer polynomial,
/// each monic, sorted by degree.
///
/// Works from the roots in `ℤ_q` at a prime where the polynomial splits:
/// every monic rational factor is a product of some subset of the linear
/// factors, and its coefficients are small enough to be read off modulo a
/// high power of `q`.
pub fn factor_over_q(g: &[BigInt]) -> Result<Vec<ZPoly>> {
    let mut g: ZPoly = g.to_vec();
    zpoly::trim(&mut g);
    let d = zpoly::degree(&g).ok_or_else(|| Error::invalid("zero polynomial"))?;
    if !g[d].is_one() {
        return Err(Error::invalid("polynomial must be monic"));
    }
    if d <= 1 {
        return Ok(vec![g]);
    }
    let q = split_prime(&g)?;
    // Mignotte: coefficients of a monic factor are at most 2^d·‖g‖
    let norm: BigInt = g.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << (d + 1)) * norm;
    let qb = BigInt::from(q);
    let mut prec = 1u32;
    let mut modulus = qb.clone();
    while modulus <= bound {
        prec += 1;
        modulus *= &qb;
    }
    let mut roots = hensel_lift_roots(&UniPoly::from_ints(&g), q, prec)?;
    let mut rest = g;
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= roots.len() {
        let mut found = None;
        for subset in Subsets::new(roots.len(), size) {
            let cand = product_of_linears(subset.iter().map(|&i| &roots[i]), &modulus);
            if let Some(quot) = zpoly::div_exact(&rest, &cand) {
                found = Some((subset, cand, quot));
                break;
            }
        }
        match found {
            Some((subset, cand, quot)) => {
                out.push(cand);
                rest = quot;
                for &i in subset.iter().rev() {
                    roots.remove(i);
                }
            }
            None => size += 1,
        }
    }
    out.push(rest);
    out.sort_by_key(|f| f.len());
    Ok(out)
}

fn split_prime(g: &[BigInt]) -> Result<u64> {
    let d = zpoly::degree(g).unwrap() as i64;
    for q in odd_primes_from(3) {
        if q > SPLIT_PRIME_CAP {
            break;
        }
        let gb = ModPoly::from_bigints(q, g);
        if gb.degree() == d && gb.is_squarefree() && gb.splits() {
            return Ok(q);
        }
    }
    Err(Error::ResourceLimit { what: "split prime search".into(), cap: SPLIT_PRIME_CAP })
}

/// `∏ (X − r)` with coefficients reduced to the symmetric range mod `m`.
fn product_of_linears<'a>(roots: impl Iterator<Item = &'a BigInt>, m: &BigInt) -> ZPoly {
    let mut acc: ZPoly = vec![BigInt::one()];
    for r in roots {
        acc = zpoly::mul(&acc, &[-r.clone(), BigInt::one()]);
        for c in acc.iter_mut() {
            *c = c.mod_floor(m);
        }
    }
    let half = m / 2;
    for c in acc.iter_mut() {
        if *c > half {
            *c -= m;
        }
    }
    zpoly::trim(&mut acc);
    acc
}

/// Lexicographic `k`-subsets of `0..n`.
struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn factors_products() {
        // (X² − X − 1)(X − 3)(X² + 1)
        let g = zpoly::mul(&zpoly::mul(&z(&[-1, -1, 1]), &z(&[-3, 1])), &z(&[1, 0, 1]));
        let f = factor_over_q(&g).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], z(&[-3, 1]));
        assert!(f.contains(&z(&[-1, -1, 1])));
        assert!(f.contains(&z(&[1, 0, 1])));
        assert_eq!(f.iter().fold(z(&[1]), |a, b| zpoly::mul(&a, b)), g);
    }

    #[test]
    fn irreducible_stays_whole() {
        let g = z(&[-2, 0, 0, 1]);
        assert_eq!(factor_over_q(&g).unwrap(), vec![g.clone()]);
        let c5 = z(&[1, 1, 1, 1, 1]);
        assert_eq!(factor_over_q(&c5).unwrap(), vec![c5.clone()]);
    }

    #[test]
    fn subsets_enumerate_binomial() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(4, 0).count(), 1);
        assert_eq!(Subsets::new(2, 3).count(), 0);
    }
}
