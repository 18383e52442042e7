use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{IntMatrix, UniPoly};
use crate::error::{Error, Result};

/// `u_{n+d} = c_1 u_{n+d−1} + … + c_d u_n` with integer coefficients, `c_d ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recurrence {
    coeffs: Vec<BigInt>,
}

impl Recurrence {
    /// Order-0 recurrences (empty coefficient list) describe the zero sequence.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(Error::invalid("last recurrence coefficient must be nonzero"));
        }
        Ok(Recurrence { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `c_d`, or 1 for the order-0 recurrence.
    pub fn constant_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Ascending integer coefficients of `g = X^d − c_1 X^{d−1} − … − c_d`.
    pub fn charpoly_ints(&self) -> Vec<BigInt> {
        let d = self.order();
        let mut v = vec![BigInt::zero(); d + 1];
        v[d] = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            v[d - 1 - i] = -c;
        }
        v
    }

    pub fn charpoly(&self) -> UniPoly {
        UniPoly::from_ints(&self.charpoly_ints())
    }

    pub fn companion(&self) -> IntMatrix {
        IntMatrix::companion(&self.coeffs)
    }

    /// Recurrence whose characteristic polynomial is the monic integer `g`.
    pub fn from_charpoly(g: &[BigInt]) -> Result<Self> {
        let d = g.len().checked_sub(1).ok_or_else(|| Error::invalid("zero polynomial"))?;
        if !g[d].is_one() {
            return Err(Error::invalid("characteristic polynomial must be monic"));
        }
        Self::new((0..d).map(|i| -&g[d - 1 - i]).collect())
    }
}

/// An integer recurrence with initial values `u_0..u_{d−1}`, describing the
/// two-sided sequence it generates. `shift` and `stride` record that this
/// sequence is `v_n = w_{shift + stride·n}` of some ancestor sequence `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    pub recurrence: Recurrence,
    pub initial: Vec<BigRational>,
    pub shift: i64,
    pub stride: u64,
}

impl SequenceSpec {
    pub fn new(recurrence: Recurrence, initial: Vec<BigRational>) -> Result<Self> {
        if initial.len() != recurrence.order() {
            return Err(Error::invalid(format!(
                "expected {} initial values, got {}",
                recurrence.order(),
                initial.len()
            )));
        }
        Ok(SequenceSpec { recurrence, initial, shift: 0, stride: 1 })
    }

    pub fn from_i64(coeffs: &[i64], initial: &[i64]) -> Result<Self> {
        Self::new(
            Recurrence::from_i64(coeffs)?,
            initial.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.recurrence.order()
    }

    /// Maps an index of this sequence back to the ancestor's indexing.
    pub fn original_index(&self, n: i64) -> i64 {
        self.shift + self.stride as i64 * n
    }

    /// Initial values as integers, if they all are.
    pub fn integer_initial(&self) -> Option<Vec<BigInt>> {
        self.initial
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn is_zero_sequence(&self) -> bool {
        self.initial.iter().all(|x| x.is_zero())
    }

    /// Exact `u_n` for any `n ∈ ℤ`, via `X^n mod g`.
    pub fn evaluate(&self, n: i64) -> BigRational {
        let d = self.order();
        if d == 0 {
            return BigRational::zero();
        }
        if n >= 0 && (n as usize) < d {
            return self.initial[n as usize].clone();
        }
        let g = self.recurrence.charpoly_ints();
        let (r, den) = if n >= 0 {
            (x_pow_mod(&g, &x_poly(d), n as u64), BigInt::one())
        } else {
            // c_d·X^{-1} ≡ X^{d−1} − c_1 X^{d−2} − … − c_{d−1} (mod g)
            let c = self.recurrence.coeffs();
            let mut base = vec![BigInt::zero(); d];
            base[d - 1] = BigInt::one();
            for i in 1..d {
                base[d - 1 - i] = -&c[i - 1];
            }
            let k = n.unsigned_abs();
            (x_pow_mod(&g, &base, k), num_traits::pow(c[d - 1].clone(), k as usize))
        };
        let mut acc = BigRational::zero();
        for (i, ri) in r.iter().enumerate() {
            if !ri.is_zero() {
                acc += &self.initial[i] * BigRational::from_integer(ri.clone());
            }
        }
        acc / BigRational::from_integer(den)
    }

    /// Terms `u_from, …, u_{from+count−1}` by forward iteration.
    pub fn terms(&self, from: i64, count: usize) -> Vec<BigRational> {
        let d = self.order();
        if d == 0 {
            return vec![BigRational::zero(); count];
        }
        let mut window: Vec<BigRational> = (0..d as i64).map(|i| self.evaluate(from + i)).collect();
        let c: Vec<BigRational> = self
            .recurrence
            .coeffs()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(window[0].clone());
            let next: BigRational = (0..d).map(|i| &c[i] * &window[d - 1 - i]).sum();
            window.remove(0);
            window.push(next);
        }
        out
    }

    /// State `(u_{n+d−1}, …, u_n)` at index `n`.
    pub fn state(&self, n: i64) -> Vec<BigRational> {
        let d = self.order() as i64;
        (0..d).rev().map(|i| self.evaluate(n + i)).collect()
    }

    /// Whether all terms are integers (true when initial values are integers
    /// and `|c_d| = 1`, or more generally on the nonnegative side).
    pub fn has_unit_constant(&self) -> bool {
        self.recurrence.constant_coeff().abs().is_one()
    }
}

fn x_poly(d: usize) -> Vec<BigInt> {
    // X reduced mod g; for d = 1 this is c_1
    let mut v = vec![BigInt::zero(); d.max(2)];
    v[1] = BigInt::one();
    v
}

/// Multiply two residues modulo the monic `g` (degree `d`).
fn mul_mod_monic(a: &[BigInt], b: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let d = g.len() - 1;
    let mut prod = vec![BigInt::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    reduce_monic(prod, g, d)
}

fn reduce_monic(mut prod: Vec<BigInt>, g: &[BigInt], d: usize) -> Vec<BigInt> {
    for k in (d..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for i in 0..d {
            prod[k - d + i] -= &c * &g[i];
        }
    }
    prod.truncate(d);
    prod.resize(d, BigInt::zero());
    prod
}

/// `base^e mod g` with `g` monic.
fn x_pow_mod(g: &[BigInt], base: &[BigInt], e: u64) -> Vec<BigInt> {
    let d = g.len() - 1;
    let base = reduce_monic(base.to_vec(), g, d);
    let mut acc = vec![BigInt::zero(); d];
    acc[0] = BigInt::one();
    if d == 0 {
        return acc;
    }
    for bit in (0..64 - e.leading_zeros()).rev() {
        acc = mul_mod_monic(&acc, &acc, g);
        if (e >> bit) & 1 == 1 {
            acc = mul_mod_monic(&acc, &base, g);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn evaluate_examples() {
        let ex1 = SequenceSpec::from_i64(&[9, -10, 522, -4745, 4225], &[-30, -27, 0, 469, 1762]).unwrap();
        assert_eq!(ex1.evaluate(2), q(0));
        assert_eq!(ex1.evaluate(0), q(-30));
        let fib = SequenceSpec::from_i64(&[1, 1], &[0, 1]).unwrap();
        assert_eq!(fib.evaluate(-5), q(5));
        assert_eq!(fib.evaluate(30), q(832040));
        assert_eq!(fib.evaluate(-6), q(-8));
    }

    #[test]
    fn negative_indices_have_denominators() {
        // u_n = 2^n
        let s = SequenceSpec::from_i64(&[2], &[1]).unwrap();
        assert_eq!(s.evaluate(-3), BigRational::new(1.into(), 8.into()));
        assert_eq!(s.evaluate(5), q(32));
    }

    #[test]
    fn forward_terms_match_evaluate() {
        let s = SequenceSpec::from_i64(&[3, -7, 2], &[1, 0, -4]).unwrap();
        let t = s.terms(-4, 12);
        for (i, v) in t.iter().enumerate() {
            assert_eq!(v, &s.evaluate(-4 + i as i64));
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Recurrence::from_i64(&[1, 0]).is_err());
        assert!(SequenceSpec::from_i64(&[1, 1], &[0]).is_err());
    }
}
