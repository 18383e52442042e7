use num_bigint::BigInt;
use num_traits::One;

use super::poly::UniPoly;
use super::primes::factorize;
use super::zpoly::{self, ZPoly};

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `X^d - 1` as an integer polynomial.
fn x_pow_minus_one(d: u64) -> ZPoly {
    let mut v = vec![BigInt::from(0); d as usize + 1];
    v[0] = BigInt::from(-1);
    v[d as usize] = BigInt::one();
    v
}

/// The `k`-th cyclotomic polynomial, built as `∏_{d|k} (X^d − 1)^{μ(k/d)}`.
pub fn cyclotomic(k: u64) -> ZPoly {
    assert!(k >= 1);
    let mut num: ZPoly = vec![BigInt::one()];
    let mut den: ZPoly = vec![BigInt::one()];
    for d in 1..=k {
        if k % d != 0 {
            continue;
        }
        match mobius(k / d) {
            1 => num = zpoly::mul(&num, &x_pow_minus_one(d)),
            -1 => den = zpoly::mul(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    zpoly::div_exact(&num, &den).expect("cyclotomic quotient is exact")
}

/// Least `k ≤ order_bound` with `Φ_k | h`.
pub fn has_root_of_unity_factor(h: &UniPoly, order_bound: u64) -> Option<u64> {
    if h.is_zero() {
        return None;
    }
    let deg = h.degree() as u64;
    (1..=order_bound).find(|&k| {
        let phi = cyclotomic(k);
        (phi.len() as u64 - 1) <= deg && h.rem(&UniPoly::from_ints(&phi)).is_zero()
    })
}
