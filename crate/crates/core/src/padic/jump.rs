use crate::algebra::primes::factorial_tail_bound;

/// Least `e ≥ 0` such that, after substituting `x = p^e·y`, the coefficient
/// of `y^{j0}` strictly dominates every later one:
/// `ν + j0·e < lb(m) + m·e` for all `m > j0`, where `lb(m)` is the a priori
/// lower bound on `v_p(a_m)`. Only indices with `lb(m) ≤ ν` constrain `e`,
/// and the result never exceeds `ν + 1`.
pub fn jump_exponent(nu: u64, j0: usize, p: u64) -> u32 {
    assert!(p >= 3, "jump exponent needs an odd prime");
    let j0 = j0 as u64;
    // lb(m) ≥ m(p−2)/(p−1), so lb(m) > ν once m exceeds this
    let m_max = (nu + 1) * (p - 1) / (p - 2) + 1;
    let mut e = 0u64;
    for m in j0 + 1..=m_max.max(j0 + 1) {
        let lb = factorial_tail_bound(m, p);
        if lb > nu {
            continue;
        }
        // need e·(m − j0) > ν − lb
        let need = (nu - lb) / (m - j0) + 1;
        e = e.max(need);
    }
    e as u32
}

/// Valid exponent check used by the verifier and tests.
pub fn jump_exponent_holds(nu: u64, j0: usize, p: u64, e: u32) -> bool {
    let j0 = j0 as u64;
    let e = e as u64;
    let m_max = (nu + 1) * (p - 1) / (p - 2) + 1;
    (j0 + 1..=m_max.max(j0 + 1)).all(|m| nu + j0 * e < factorial_tail_bound(m, p) + m * e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_is_least_valid() {
        for p in [3u64, 5, 7, 11, 29] {
            for nu in 0..12 {
                for j0 in 0..4 {
                    let e = jump_exponent(nu, j0, p);
                    assert!(jump_exponent_holds(nu, j0, p, e));
                    if e > 0 {
                        assert!(!jump_exponent_holds(nu, j0, p, e - 1));
                    }
                    assert!(e as u64 <= nu + 1);
                }
            }
        }
    }

    #[test]
    fn constant_term_with_unit_linear_term() {
        // ν = 1 at j0 = 0 with lb(1) = 1: needs e = 1
        assert_eq!(jump_exponent(1, 0, 29), 1);
        assert_eq!(jump_exponent(0, 0, 29), 0);
    }
}
