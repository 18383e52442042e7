use num_rational::BigRational;
use num_traits::{One, Zero};

use super::spec::{Recurrence, SequenceSpec};
use crate::error::{Error, Result};

/// Berlekamp–Massey over ℚ. Returns the connection coefficients `C_1..C_L` of
/// the shortest recurrence `s_n + C_1 s_{n−1} + … + C_L s_{n−L} = 0`
/// generating `s`.
pub fn berlekamp_massey(s: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for n in 0..s.len() {
        let mut disc = s[n].clone();
        for i in 1..=l {
            if let Some(ci) = c.get(i) {
                disc += ci * &s[n - i];
            }
        }
        if disc.is_zero() {
            m += 1;
            continue;
        }
        let coef = &disc / &bd;
        let mut next = c.clone();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            b = c;
            l = n + 1 - l;
            bd = disc;
            m = 1;
        } else {
            m += 1;
        }
        c = next;
    }
    c.resize(l + 1, BigRational::zero());
    c.into_iter().skip(1).collect()
}

/// The minimal-order spec generating the same two-sided sequence.
pub fn minimal_recurrence(spec: &SequenceSpec) -> Result<SequenceSpec> {
    let d = spec.order();
    if d == 0 {
        return Ok(spec.clone());
    }
    let terms = spec.terms(0, 2 * d);
    let conn = berlekamp_massey(&terms);
    let order = conn.len();
    if order == d {
        return Ok(spec.clone());
    }
    let mut coeffs = Vec::with_capacity(order);
    for c in &conn {
        if !c.is_integer() {
            return Err(Error::internal("minimal recurrence has non-integer coefficients"));
        }
        coeffs.push(-c.to_integer());
    }
    if coeffs.last().is_some_and(|c| c.is_zero()) {
        return Err(Error::internal("minimal recurrence has zero constant coefficient"));
    }
    Ok(SequenceSpec {
        recurrence: Recurrence::new(coeffs)?,
        initial: terms[..order].to_vec(),
        shift: spec.shift,
        stride: spec.stride,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::rational_rank;

    #[test]
    fn examples() {
        let padded = SequenceSpec::from_i64(&[2, 0, -1], &[0, 1, 1]).unwrap();
        let m = minimal_recurrence(&padded).unwrap();
        assert_eq!(m.recurrence, Recurrence::from_i64(&[1, 1]).unwrap());
        let one = SequenceSpec::from_i64(&[1], &[1]).unwrap();
        assert_eq!(minimal_recurrence(&one).unwrap(), one);
        let zero = SequenceSpec::from_i64(&[3, 1], &[0, 0]).unwrap();
        assert_eq!(minimal_recurrence(&zero).unwrap().order(), 0);
    }

    #[test]
    fn hankel_rank_matches_order() {
        let s = SequenceSpec::from_i64(&[0, 5, 0, -4], &[1, 2, 5, 8]).unwrap();
        let m = minimal_recurrence(&s).unwrap();
        let t = s.terms(0, 2 * s.order() + 1);
        let k = m.order();
        let rows: Vec<Vec<BigRational>> = (0..k).map(|i| t[i..i + k].to_vec()).collect();
        assert_eq!(rational_rank(&rows), k);
        assert_eq!(m.terms(0, 9), s.terms(0, 9));
    }
}
