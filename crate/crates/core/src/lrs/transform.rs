use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::classify::Classification;
use super::spec::{Recurrence, SequenceSpec};
use crate::error::{Error, Result};

/// An integer spec together with the scaling relating it to its source:
/// `spec_n = ell^n · scale · source_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub spec: SequenceSpec,
    pub ell: BigInt,
    pub scale: BigInt,
}

/// Clear denominators of a rational recurrence via `v_n = ℓ^n·s·u_n`, with `ℓ`
/// the lcm of the coefficient denominators and `s` the lcm of the denominators
/// of `ℓ^n u_n` for `n < d`.
pub fn normalize_to_integer(coeffs: &[BigRational], initial: &[BigRational]) -> Result<Normalized> {
    if coeffs.is_empty() {
        return Err(Error::invalid("empty coefficient list"));
    }
    if coeffs.last().unwrap().is_zero() {
        return Err(Error::invalid("last recurrence coefficient must be nonzero"));
    }
    if coeffs.len() != initial.len() {
        return Err(Error::invalid(format!(
            "expected {} initial values, got {}",
            coeffs.len(),
            initial.len()
        )));
    }
    let ell = coeffs.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let ell_q = BigRational::from_integer(ell.clone());
    let mut pow = BigRational::one();
    let mut int_coeffs = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        pow *= &ell_q;
        let v = c * &pow;
        debug_assert!(v.is_integer());
        int_coeffs.push(v.to_integer());
    }
    let mut scaled = Vec::with_capacity(initial.len());
    let mut pow = BigRational::one();
    for u in initial {
        scaled.push(u * &pow);
        pow *= &ell_q;
    }
    let scale = scaled.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let scale_q = BigRational::from_integer(scale.clone());
    let init = scaled.into_iter().map(|x| x * &scale_q).collect();
    Ok(Normalized {
        spec: SequenceSpec::new(Recurrence::new(int_coeffs)?, init)?,
        ell,
        scale,
    })
}

/// `v_n = u_{M·n + r}`; the recurrence is the characteristic polynomial of `A^M`.
pub fn subsequence(spec: &SequenceSpec, m: u64, r: i64) -> Result<SequenceSpec> {
    if m == 0 {
        return Err(Error::invalid("subsequence step must be positive"));
    }
    let d = spec.order();
    let rec = if m == 1 {
        spec.recurrence.clone()
    } else {
        let cp = spec.recurrence.companion().pow(m).charpoly(None);
        Recurrence::from_charpoly(&cp)?
    };
    let mi = m as i64;
    let initial = (0..d as i64).map(|n| spec.evaluate(mi * n + r)).collect();
    Ok(SequenceSpec {
        recurrence: rec,
        initial,
        shift: spec.original_index(r),
        stride: spec.stride * m,
    })
}

/// `v_n = u_{−n}`, renormalized to integer coefficients.
pub fn reverse(spec: &SequenceSpec) -> Result<Normalized> {
    let d = spec.order();
    if d == 0 {
        return Ok(Normalized { spec: spec.clone(), ell: BigInt::one(), scale: BigInt::one() });
    }
    let c = spec.recurrence.coeffs();
    let cd = BigRational::from_integer(c[d - 1].clone());
    let mut coeffs: Vec<BigRational> = (1..d)
        .map(|i| -BigRational::from_integer(c[d - 1 - i].clone()) / &cd)
        .collect();
    coeffs.push(cd.recip());
    let initial: Vec<BigRational> = (0..d as i64).map(|n| spec.evaluate(-n)).collect();
    let mut out = normalize_to_integer(&coeffs, &initial)?;
    out.spec.shift = spec.shift;
    out.spec.stride = spec.stride;
    Ok(out)
}

/// Split a degenerate sequence into the `K` interleaved subsequences
/// `u_{K·n + r}`, `K` the lcm of the root-of-unity orders among root ratios.
pub fn decompose(spec: &SequenceSpec, class: &Classification) -> Result<Vec<SequenceSpec>> {
    let k = class.period();
    (0..k as i64).map(|r| subsequence(spec, k, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrs::classify::{classify, SequenceClass};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_examples() {
        let n = normalize_to_integer(&[q(1, 2)], &[q(1, 1)]).unwrap();
        assert_eq!(n.ell, BigInt::from(2));
        assert_eq!(n.spec.recurrence.coeffs(), &[BigInt::from(1)]);
        assert_eq!(n.spec.initial, vec![q(1, 1)]);

        let id = normalize_to_integer(&[q(1, 1), q(1, 1)], &[q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(id.ell, BigInt::from(1));
        assert_eq!(id.spec, SequenceSpec::from_i64(&[1, 1], &[0, 1]).unwrap());

        assert!(normalize_to_integer(&[], &[]).is_err());
    }

    #[test]
    fn normalize_preserves_zero_set() {
        let coeffs = [q(3, 2), q(1, 4)];
        let init = [q(1, 1), q(1, 1)];
        let n = normalize_to_integer(&coeffs, &init).unwrap();
        assert_eq!(n.ell, BigInt::from(4));
        // direct rational evaluation of the source sequence
        let mut src: Vec<BigRational> = init.to_vec();
        for i in 2..=20 {
            let v = &coeffs[0] * &src[i - 1] + &coeffs[1] * &src[i - 2];
            src.push(v);
        }
        for (i, u) in src.iter().enumerate() {
            let lhs = n.spec.evaluate(i as i64);
            let rhs = u * BigRational::from_integer(num_traits::pow(n.ell.clone(), i) * &n.scale);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn subsequence_examples() {
        let fib = SequenceSpec::from_i64(&[1, 1], &[0, 1]).unwrap();
        let s = subsequence(&fib, 2, 0).unwrap();
        assert_eq!(s.recurrence.coeffs(), &[BigInt::from(3), BigInt::from(-1)]);
        let t: Vec<_> = s.terms(0, 6);
        let want: Vec<_> = [0, 1, 3, 8, 21, 55].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(t, want);
        assert_eq!(subsequence(&fib, 1, 0).unwrap(), fib);
        assert!(subsequence(&fib, 0, 0).is_err());
    }

    #[test]
    fn subsequence_through_example_one_zero() {
        let ex1 = SequenceSpec::from_i64(&[9, -10, 522, -4745, 4225], &[-30, -27, 0, 469, 1762]).unwrap();
        let s = subsequence(&ex1, 14, 2).unwrap();
        assert_eq!(s.shift, 2);
        assert_eq!(s.stride, 14);
        assert!(s.evaluate(0).is_zero());
        for n in (-6..=6).filter(|&n| n != 0) {
            assert!(!s.evaluate(n).is_zero());
        }
    }

    #[test]
    fn reverse_examples() {
        let fib = SequenceSpec::from_i64(&[1, 1], &[0, 1]).unwrap();
        let r = reverse(&fib).unwrap();
        assert_eq!(r.ell, BigInt::from(1));
        let want: Vec<_> = [0, 1, -1, 2, -3].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(r.spec.terms(0, 5), want);
        // palindromic X^2 - 3X + 1: reverse stays integral without rescaling
        let pal = SequenceSpec::from_i64(&[3, -1], &[1, 2]).unwrap();
        let rp = reverse(&pal).unwrap();
        assert_eq!(rp.ell, BigInt::from(1));
        assert_eq!(rp.scale, BigInt::from(1));
    }

    #[test]
    fn decompose_degenerate() {
        let s = SequenceSpec::from_i64(&[0, 4], &[2, 0]).unwrap();
        let c = classify(&s).unwrap();
        let parts = decompose(&s, &c).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_ne!(classify(p).unwrap().variant, SequenceClass::Degenerate);
        }
    }
}
