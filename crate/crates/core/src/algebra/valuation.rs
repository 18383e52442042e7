use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// A p-adic valuation: a finite exponent or `+∞` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer, `None` for zero.
pub fn int_valuation(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0u64;
    // strip in blocks of p^16 first to keep large valuations cheap
    let block = num_traits::pow(pb.clone(), 16);
    loop {
        let (q, r) = x.div_rem(&block);
        if !r.is_zero() {
            break;
        }
        x = q;
        v += 16;
    }
    loop {
        let (q, r) = x.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        x = q;
        v += 1;
    }
    Some(v)
}

/// `v_p(x)` for a rational `x`.
pub fn padic_valuation(x: &BigRational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(rational_valuation(x, p))
}

/// Valuation without the primality check, for hot loops over known primes.
pub(crate) fn rational_valuation(x: &BigRational, p: u64) -> Valuation {
    match int_valuation(x.numer(), p) {
        None => Valuation::Infinite,
        Some(vn) => {
            let vd = int_valuation(x.denom(), p).unwrap_or(0);
            Valuation::Finite(vn as i64 - vd as i64)
        }
    }
}

/// Reduce a p-integral rational modulo `modulus` (a power of `p`). Returns `None`
/// if the denominator is not invertible.
pub fn reduce_rational_mod(x: &BigRational, modulus: &BigInt) -> Option<BigInt> {
    let d = x.denom().mod_floor(modulus);
    let inv = mod_inverse(&d, modulus)?;
    Some((x.numer() * inv).mod_floor(modulus))
}

/// Modular inverse for big integers.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        assert_eq!(padic_valuation(&q(18, 1), 3).unwrap(), Valuation::Finite(2));
        assert_eq!(padic_valuation(&q(7, 25), 5).unwrap(), Valuation::Finite(-2));
        assert_eq!(padic_valuation(&q(0, 1), 2).unwrap(), Valuation::Infinite);
        assert!(padic_valuation(&q(3, 1), 4).is_err());
    }

    #[test]
    fn large_valuation_blocks() {
        let x = num_traits::pow(BigInt::from(3), 53) * BigInt::from(7);
        assert_eq!(int_valuation(&x, 3), Some(53));
    }

    #[test]
    fn ordering_places_infinity_last() {
        assert!(Valuation::Finite(1_000_000) < Valuation::Infinite);
        assert!(Valuation::Finite(-3) < Valuation::Finite(0));
    }
}
