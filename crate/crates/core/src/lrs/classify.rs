use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::minimal::minimal_recurrence;
use super::spec::SequenceSpec;
use crate::algebra::primes::{euler_phi, lcm_u64};
use crate::algebra::{cyclotomic, zpoly, UniPoly};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceClass {
    SimpleNonDegenerate,
    Degenerate,
    NotSimple,
    IdenticallyZero,
}

impl fmt::Display for SequenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SequenceClass::SimpleNonDegenerate => "simple non-degenerate",
            SequenceClass::Degenerate => "degenerate",
            SequenceClass::NotSimple => "not simple",
            SequenceClass::IdenticallyZero => "identically zero",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub variant: SequenceClass,
    pub detail: String,
    /// Orders `k ≥ 2` of roots of unity occurring as ratios of characteristic roots.
    pub unity_orders: Vec<u64>,
    pub minimal: SequenceSpec,
}

/// `R(x) = Res_y(g(y), g(x·y))`, whose roots are the ratios `λ_j/λ_i`.
pub fn ratio_polynomial(g: &[BigInt]) -> UniPoly {
    let d = g.len() - 1;
    let pts: Vec<(BigRational, BigRational)> = (0..=(d * d) as i64)
        .map(|x0| {
            let x = BigInt::from(x0);
            let mut scaled = Vec::with_capacity(g.len());
            let mut f = BigInt::one();
            for c in g {
                scaled.push(c * &f);
                f *= &x;
            }
            let r = zpoly::resultant(g, &scaled);
            (BigRational::from_integer(x), BigRational::from_integer(r))
        })
        .collect();
    UniPoly::interpolate(&pts)
}

/// Orders `k ≥ 2` with `Φ_k | R(x)` once the factors `x − 1` are stripped.
pub fn unity_ratio_orders(g: &[BigInt]) -> Vec<u64> {
    let mut r = ratio_polynomial(g);
    let lin = UniPoly::from_i64(&[-1, 1]);
    while !r.is_zero() && r.eval(&BigRational::one()).is_zero() {
        r = r.div_rem(&lin).0;
    }
    let deg = r.degree().max(0) as u64;
    let d = (g.len() - 1) as u64;
    let bound = d * d;
    let mut out = Vec::new();
    if deg == 0 {
        return out;
    }
    // φ(k) ≥ √(k/2), so φ(k) ≤ B forces k ≤ 2B²
    for k in 2..=(2 * bound * bound).max(2) {
        let phi = euler_phi(k);
        if phi > deg || phi > bound {
            continue;
        }
        if r.rem(&UniPoly::from_ints(&cyclotomic(k))).is_zero() {
            out.push(k);
        }
    }
    out
}

/// Classify the sequence generated by `spec` using its minimal recurrence.
pub fn classify(spec: &SequenceSpec) -> Result<Classification> {
    let minimal = minimal_recurrence(spec)?;
    let d = minimal.order();
    if d == 0 {
        return Ok(Classification {
            variant: SequenceClass::IdenticallyZero,
            detail: "all terms vanish".into(),
            unity_orders: Vec::new(),
            minimal,
        });
    }
    let g = minimal.recurrence.charpoly();
    let common = g.gcd(&g.derivative());
    if common.degree() > 0 {
        return Ok(Classification {
            variant: SequenceClass::NotSimple,
            detail: format!("repeated characteristic root; gcd(g, g') = {common}"),
            unity_orders: Vec::new(),
            minimal,
        });
    }
    let orders = unity_ratio_orders(&minimal.recurrence.charpoly_ints());
    if !orders.is_empty() {
        let k = orders.iter().fold(1, |a, &b| lcm_u64(a, b));
        return Ok(Classification {
            variant: SequenceClass::Degenerate,
            detail: format!("root ratios include roots of unity of orders {orders:?} (lcm {k})"),
            unity_orders: orders,
            minimal,
        });
    }
    Ok(Classification {
        variant: SequenceClass::SimpleNonDegenerate,
        detail: format!("minimal order {d}"),
        unity_orders: Vec::new(),
        minimal,
    })
}

impl Classification {
    pub fn is_simple_nondegenerate(&self) -> bool {
        self.variant == SequenceClass::SimpleNonDegenerate
    }

    /// Least common multiple of the detected root-of-unity orders (1 if none).
    pub fn period(&self) -> u64 {
        self.unity_orders.iter().fold(1, |a, &b| lcm_u64(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let deg = SequenceSpec::from_i64(&[0, 4], &[2, 0]).unwrap();
        assert_eq!(classify(&deg).unwrap().variant, SequenceClass::Degenerate);
        let ns = SequenceSpec::from_i64(&[2, -1], &[0, 1]).unwrap();
        assert_eq!(classify(&ns).unwrap().variant, SequenceClass::NotSimple);
        let fib = SequenceSpec::from_i64(&[1, 1], &[0, 1]).unwrap();
        assert_eq!(classify(&fib).unwrap().variant, SequenceClass::SimpleNonDegenerate);
        let z = SequenceSpec::from_i64(&[1, 1], &[0, 0]).unwrap();
        assert_eq!(classify(&z).unwrap().variant, SequenceClass::IdenticallyZero);
    }

    #[test]
    fn degenerate_orders() {
        // roots 1, ω, ω² : X^3 - 1
        let s = SequenceSpec::from_i64(&[0, 0, 1], &[1, 2, 4]).unwrap();
        let c = classify(&s).unwrap();
        assert_eq!(c.unity_orders, vec![3]);
        // roots 2, -2 only through a non-minimal recurrence: minimal is order 1
        let s = SequenceSpec::from_i64(&[0, 4], &[1, 2]).unwrap();
        assert_eq!(classify(&s).unwrap().variant, SequenceClass::SimpleNonDegenerate);
    }

    #[test]
    fn worked_example_is_simple_nondegenerate() {
        let ex1 = SequenceSpec::from_i64(&[9, -10, 522, -4745, 4225], &[-30, -27, 0, 469, 1762]).unwrap();
        assert!(classify(&ex1).unwrap().is_simple_nondegenerate());
    }
}
