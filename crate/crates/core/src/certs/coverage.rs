use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Whether the progressions `{n ≡ r (mod M)}` partition ℤ: residues in range,
/// pairwise disjoint, and densities `1/M` summing to one. Disjoint sets whose
/// densities add up to one leave no residue class uncovered.
pub fn coverage_check(entries: &[(BigInt, BigInt)]) -> bool {
    let mut total = BigRational::zero();
    for (m, r) in entries {
        if !m.is_positive() || r.is_negative() || r >= m {
            return false;
        }
        total += BigRational::new(BigInt::one(), m.clone());
    }
    if total != BigRational::one() {
        return false;
    }
    for (i, (m1, r1)) in entries.iter().enumerate() {
        for (m2, r2) in &entries[..i] {
            let g = m1.gcd(m2);
            if ((r1 - r2) % &g).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(m, r)| (m.into(), r.into())).collect()
    }

    #[test]
    fn examples() {
        assert!(coverage_check(&e(&[(1, 0)])));
        assert!(coverage_check(&e(&[(2, 0), (2, 1)])));
        assert!(!coverage_check(&e(&[(2, 0), (4, 1)])));
        assert!(coverage_check(&e(&[(2, 0), (4, 1), (4, 3)])));
        // densities sum to one but classes overlap
        assert!(!coverage_check(&e(&[(2, 0), (4, 0), (4, 1)])));
        assert!(!coverage_check(&e(&[(2, 2), (2, 1)])));
        assert!(!coverage_check(&[]));
    }
}
