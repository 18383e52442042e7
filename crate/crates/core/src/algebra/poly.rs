use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// Univariate polynomial over ℚ, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c·X^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the end).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Clears denominators and content: returns `(primitive integer poly, c)` with
    /// `self = c · prim`. The primitive part has positive leading coefficient.
    pub fn to_primitive_integer(&self) -> (ZPoly, BigRational) {
        if self.is_zero() {
            return (Vec::new(), BigRational::zero());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: ZPoly = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let prim = zpoly::primitive_part(&ints);
        // ints = sign*content*prim
        let lead_ratio = BigRational::new(
            ints.last().unwrap().clone(),
            prim.last().unwrap().clone(),
        );
        (prim, lead_ratio / BigRational::from_integer(den))
    }

    /// Integer coefficients, if all coefficients are integral.
    pub fn integer_coeffs(&self) -> Option<ZPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (a, _) = self.to_primitive_integer();
        let (b, _) = other.to_primitive_integer();
        UniPoly::from_ints(&zpoly::gcd(&a, &b)).monic()
    }

    /// Substitute `X -> c·X`.
    pub fn scale_arg(&self, c: &BigRational) -> Self {
        let mut f = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &f);
            f *= c;
        }
        Self::new(out)
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Self {
        // Newton divided differences
        let n = points.len();
        let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for lvl in 1..n {
            for i in (lvl..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - lvl].0;
                dd[i] = num / den;
            }
        }
        let mut acc = UniPoly::zero();
        for i in (0..n).rev() {
            let lin = UniPoly::new(vec![-points[i].0.clone(), BigRational::one()]);
            acc = &(&acc * &lin) + &UniPoly::constant(dd[i].clone());
        }
        acc
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}X", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}X^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Arithmetic in `ℚ[X]/(h)`.
impl UniPoly {
    pub fn mul_mod(&self, o: &UniPoly, h: &UniPoly) -> UniPoly {
        (self * o).rem(h)
    }

    pub fn pow_mod(&self, mut e: u64, h: &UniPoly) -> UniPoly {
        let mut base = self.rem(h);
        let mut acc = UniPoly::one().rem(h);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, h);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, h);
            }
        }
        acc
    }

    /// Extended Euclid: `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Inverse modulo `h`, if `gcd(self, h) = 1`.
    pub fn inverse_mod(&self, h: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = UniPoly::ext_gcd(&self.rem(h), h);
        (g.degree() == 0).then(|| s.rem(h))
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| &(&acc * g) + &UniPoly::constant(c.clone()))
    }

    /// `self(g(X)) mod h`.
    pub fn compose_mod(&self, g: &UniPoly, h: &UniPoly) -> UniPoly {
        let g = g.rem(h);
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| {
            &acc.mul_mod(&g, h) + &UniPoly::constant(c.clone())
        })
    }
}

/// Resultant of two rational polynomials.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<BigRational> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::invalid("resultant of two zero polynomials"));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(BigRational::zero());
    }
    let (df, dg) = (f.degree() as usize, g.degree() as usize);
    let (a, ca) = f.to_primitive_integer();
    let (b, cb) = g.to_primitive_integer();
    let r = BigRational::from_integer(zpoly::resultant(&a, &b));
    Ok(r * num_traits::pow(ca, dg) * num_traits::pow(cb, df))
}

/// Discriminant `(-1)^{n(n-1)/2} Res(g, g') / lc(g)`.
pub fn discriminant(g: &UniPoly) -> Result<BigRational> {
    let n = g.degree();
    if n < 1 {
        return Err(Error::invalid("discriminant of a constant polynomial"));
    }
    if n == 1 {
        return Ok(BigRational::one());
    }
    let r = resultant(g, &g.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(r * BigRational::from_integer(sign.into()) / g.leading().unwrap())
}

/// `g / gcd(g, g')`, monic.
pub fn squarefree_part(g: &UniPoly) -> Result<UniPoly> {
    if g.is_zero() {
        return Err(Error::invalid("squarefree part of the zero polynomial"));
    }
    if g.degree() == 0 {
        return Ok(UniPoly::one());
    }
    let d = g.gcd(&g.derivative());
    Ok(g.div_rem(&d).0.monic())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), q(-1));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), q(0));
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap(), q(1));
        assert!(resultant(&UniPoly::zero(), &UniPoly::zero()).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-5, 0, 1])).unwrap(), q(20));
        assert_eq!(discriminant(&p(&[1, 1, 1])).unwrap(), q(-3));
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])).unwrap(), q(-108));
        assert!(discriminant(&p(&[4])).is_err());
        // non-monic: disc(2X^2 + 3X + 1) = 9 - 8
        assert_eq!(discriminant(&p(&[1, 3, 2])).unwrap(), q(1));
    }

    #[test]
    fn squarefree_examples() {
        let g = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(squarefree_part(&g).unwrap(), p(&[-2, 1, 1]));
        assert_eq!(squarefree_part(&p(&[1, 2, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(squarefree_part(&p(&[2, -3, 0, 1])).unwrap(), p(&[-2, 1, 1]));
        assert!(squarefree_part(&UniPoly::zero()).is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[1, 1]) * &p(&[3, 0, 2]);
        let (qq, r) = a.div_rem(&p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(qq, p(&[3, 0, 2]));
        assert_eq!(a.gcd(&p(&[2, 2])), p(&[1, 1]));
    }

    #[test]
    fn quotient_ring_inverse() {
        let h = p(&[-2, 0, 1]);
        let a = p(&[1, 1]); // 1 + √2
        let inv = a.inverse_mod(&h).unwrap();
        assert_eq!(a.mul_mod(&inv, &h), UniPoly::one());
        // X is a zero divisor modulo X^2 - X
        assert!(p(&[0, 1]).inverse_mod(&p(&[0, -1, 1])).is_none());
        assert_eq!(p(&[0, 1]).pow_mod(5, &h), p(&[0, 4]));
        assert_eq!(p(&[1, 0, 1]).compose(&p(&[1, 1])), p(&[2, 2, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| (q(i), f.eval(&q(i)))).collect();
        assert_eq!(UniPoly::interpolate(&pts), f);
    }

    #[test]
    fn primitive_integer_round_trip() {
        let f = UniPoly::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ]);
        let (prim, c) = f.to_primitive_integer();
        assert_eq!(UniPoly::from_ints(&prim).scale(&c), f);
        assert!(prim.last().unwrap().is_positive());
    }
}
