use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::UniPoly;
use crate::error::{Error, Result};

/// The ring `ℚ[θ]/(h)` for a monic squarefree `h`. When `h` is irreducible
/// this is a number field; in general it is a finite product of fields, and
/// every identity proved in the ring holds in each factor.
#[derive(Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: Arc<UniPoly>,
}

impl NumberField {
    pub fn new(h: UniPoly) -> Result<Self> {
        if h.degree() < 1 {
            return Err(Error::invalid("defining polynomial must have positive degree"));
        }
        let h = h.monic();
        if h.gcd(&h.derivative()).degree() != 0 {
            return Err(Error::invalid("defining polynomial is not squarefree"));
        }
        Ok(NumberField { modulus: Arc::new(h) })
    }

    /// `ℚ` itself, presented as `ℚ[θ]/(θ)`.
    pub fn rationals() -> Self {
        NumberField { modulus: Arc::new(UniPoly::x()) }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree() as usize
    }

    pub fn element(&self, rep: UniPoly) -> AlgebraicNumber {
        AlgebraicNumber { rep: rep.rem(&self.modulus), modulus: self.modulus.clone() }
    }

    pub fn from_rational(&self, c: BigRational) -> AlgebraicNumber {
        self.element(UniPoly::constant(c))
    }

    pub fn from_int(&self, c: &BigInt) -> AlgebraicNumber {
        self.from_rational(BigRational::from_integer(c.clone()))
    }

    pub fn zero(&self) -> AlgebraicNumber {
        self.element(UniPoly::zero())
    }

    pub fn one(&self) -> AlgebraicNumber {
        self.element(UniPoly::one())
    }

    pub fn generator(&self) -> AlgebraicNumber {
        self.element(UniPoly::x())
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", self.modulus)
    }
}

/// An element of a [`NumberField`], stored as its reduced representative.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    rep: UniPoly,
    modulus: Arc<UniPoly>,
}

impl AlgebraicNumber {
    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn field(&self) -> NumberField {
        NumberField { modulus: self.modulus.clone() }
    }

    fn same(&self, rep: UniPoly) -> Self {
        AlgebraicNumber { rep, modulus: self.modulus.clone() }
    }

    fn check(&self, o: &Self) {
        debug_assert!(self.modulus == o.modulus, "elements of different rings");
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == UniPoly::one()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        self.same(&self.rep + &o.rep)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        self.same(&self.rep - &o.rep)
    }

    pub fn neg(&self) -> Self {
        self.same(-&self.rep)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        self.same(self.rep.mul_mod(&o.rep, &self.modulus))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.same(self.rep.scale(c))
    }

    /// Inverse, if the element is a unit of the ring.
    pub fn inv(&self) -> Option<Self> {
        self.rep.inverse_mod(&self.modulus).map(|r| self.same(r))
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, e: &BigInt) -> Option<Self> {
        let base = if e.is_negative() { self.inv()? } else { self.clone() };
        let mut exp = e.abs();
        let mut acc = UniPoly::one().rem(&self.modulus);
        let mut b = base.rep;
        let two = BigInt::from(2);
        while !exp.is_zero() {
            if (&exp % &two).is_one() {
                acc = acc.mul_mod(&b, &self.modulus);
            }
            exp /= &two;
            if !exp.is_zero() {
                b = b.mul_mod(&b, &self.modulus);
            }
        }
        Some(self.same(acc))
    }

    pub fn pow_i64(&self, e: i64) -> Option<Self> {
        self.pow(&BigInt::from(e))
    }

    /// Evaluate a rational polynomial at this element.
    pub fn eval_poly(&self, f: &UniPoly) -> Self {
        self.same(f.compose_mod(&self.rep, &self.modulus))
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_arithmetic() {
        let k = NumberField::new(UniPoly::from_i64(&[-1, -1, 1])).unwrap();
        let phi = k.generator();
        // φ² = φ + 1
        assert_eq!(phi.mul(&phi), phi.add(&k.one()));
        let inv = phi.inv().unwrap();
        assert_eq!(inv, phi.sub(&k.one()));
        assert_eq!(phi.pow_i64(-2).unwrap().mul(&phi.pow_i64(2).unwrap()), k.one());
        // φ^10 = 55φ + 34
        let want = phi.scale(&BigRational::from_integer(55.into())).add(&k.from_int(&34.into()));
        assert_eq!(phi.pow_i64(10).unwrap(), want);
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(NumberField::new(UniPoly::from_i64(&[1, 2, 1])).is_err());
        assert!(NumberField::new(UniPoly::from_i64(&[3])).is_err());
    }

    #[test]
    fn zero_divisors_have_no_inverse() {
        // ℚ[t]/(t² − t) ≅ ℚ × ℚ
        let r = NumberField::new(UniPoly::from_i64(&[0, -1, 1])).unwrap();
        assert!(r.generator().inv().is_none());
        assert!(r.generator().sub(&r.from_int(&2.into())).inv().is_some());
    }
}
