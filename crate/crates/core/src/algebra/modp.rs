use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::poly::{squarefree_part, UniPoly};
use super::primes::{inv_mod, is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Polynomial over 𝔽_p with coefficients in `[0, p)`, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_bigints(p: u64, c: &[BigInt]) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            c.iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    /// Reduce a rational polynomial; fails if some denominator is divisible by `p`.
    pub fn from_unipoly(g: &UniPoly, p: u64) -> Result<Self> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(g.coeffs().len());
        for c in g.coeffs() {
            let den = c.denom().mod_floor(&pb).to_u64().unwrap();
            let inv = inv_mod(den, p)
                .ok_or_else(|| Error::invalid(format!("denominator divisible by {p}")))?;
            let num = c.numer().mod_floor(&pb).to_u64().unwrap();
            out.push(mul_mod(num, inv, p));
        }
        Ok(Self::new(p, out))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                ((a as u128 + b as u128) % self.p as u128) as u64
            })
            .collect();
        Self::new(self.p, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                ((a as u128 + self.p as u128 - b as u128) % self.p as u128) as u64
            })
            .collect();
        Self::new(self.p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, out.into_iter().map(|x| x as u64).collect())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p).expect("nonzero residue mod prime");
                Self::new(
                    self.p,
                    self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(),
                )
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::new(p, Vec::new()), self.clone());
        }
        let inv = inv_mod(d.coeffs[dd], p).expect("leading coefficient invertible");
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, p);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mul_mod(c, dc, p)) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree() <= 0 {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// True iff the polynomial is a product of linear factors over 𝔽_p
    /// (repeated factors allowed).
    pub fn splits(&self) -> bool {
        let mut g = self.monic();
        while g.degree() > 0 {
            let xp = Self::x(self.p).pow_mod(self.p, &g);
            let lin = g.gcd(&xp.sub(&Self::x(self.p)));
            if lin.degree() <= 0 {
                return false;
            }
            g = g.div_rem(&lin).0;
        }
        true
    }

    /// Degrees of the distinct irreducible factors, ascending, and the largest
    /// multiplicity of any factor.
    pub fn factor_degrees(&self) -> (Vec<u32>, u32) {
        let p = self.p;
        let mut rest = self.monic();
        let mut degrees = Vec::new();
        let mut mult = 1u32;
        let mut xq = Self::x(p);
        let mut k = 0u32;
        while rest.degree() > 0 {
            k += 1;
            xq = xq.pow_mod(p, &rest);
            let g = rest.gcd(&xq.sub(&Self::x(p)));
            if g.degree() > 0 {
                degrees.push(k);
                let mut copies = 0;
                let mut h = g;
                while h.degree() > 0 {
                    rest = rest.div_rem(&h).0;
                    copies += 1;
                    h = rest.gcd(&h);
                }
                mult = mult.max(copies);
                xq = xq.rem(&rest);
            }
        }
        (degrees, mult)
    }

    /// Distinct roots in `[0, p)`, sorted ascending.
    pub fn distinct_roots(&self) -> Vec<u64> {
        let p = self.p;
        if self.degree() <= 0 {
            return Vec::new();
        }
        let f = self.monic();
        if p <= 64 {
            return (0..p).filter(|&x| f.eval(x) == 0).collect();
        }
        // product of the distinct linear factors
        let xp = Self::x(p).pow_mod(p, &f);
        let lin = f.gcd(&xp.sub(&Self::x(p)));
        let mut out = Vec::new();
        split_linear(&lin, &mut out);
        out.sort_unstable();
        out
    }
}

/// A multiple of the order of any integer matrix with characteristic
/// polynomial `charpoly` (ascending, monic) modulo `m`, if it fits in a `u64`.
/// Needs the constant coefficient to be a unit mod `m`.
pub fn matrix_order_bound(charpoly: &[BigInt], m: u64) -> Option<u64> {
    let mut bound = 1u64;
    for (q, k) in crate::algebra::primes::factorize(m) {
        let f = ModPoly::from_bigints(q, charpoly);
        if f.coeffs().first().copied().unwrap_or(0) == 0 {
            return None;
        }
        let (degrees, mult) = f.factor_degrees();
        let mut b = 1u64;
        for d in degrees {
            let t = q.checked_pow(d)? - 1;
            b = (b / b.gcd(&t)).checked_mul(t)?;
        }
        // unipotent part: q^s ≥ multiplicity, then one q per extra power of q
        let mut s = 0u32;
        while q.checked_pow(s)? < mult as u64 {
            s += 1;
        }
        b = b.checked_mul(q.checked_pow(s + k - 1)?)?;
        let g = bound.gcd(&b);
        bound = (bound / g).checked_mul(b)?;
    }
    Some(bound)
}

/// Equal-degree splitting of a squarefree product of linear factors.
fn split_linear(f: &ModPoly, out: &mut Vec<u64>) {
    let p = f.p;
    match f.degree() {
        d if d <= 0 => {}
        1 => {
            let m = f.monic();
            out.push((p - m.coeffs[0]) % p);
        }
        _ => {
            let mut a = 0u64;
            loop {
                let shifted = ModPoly::new(p, vec![a, 1]);
                let h = shifted.pow_mod((p - 1) / 2, f).sub(&ModPoly::one(p));
                let g = f.gcd(&h);
                if g.degree() > 0 && g.degree() < f.degree() {
                    let other = f.div_rem(&g).0;
                    split_linear(&g, out);
                    split_linear(&other, out);
                    return;
                }
                a += 1;
            }
        }
    }
}

/// Whether `squarefree_part(g)` reduced mod `p` is a product of distinct linear
/// factors.
pub fn splits_completely_mod_p(g: &UniPoly, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let Some(lc) = g.leading() else {
        return Err(Error::invalid("zero polynomial"));
    };
    if !lc.is_integer() || (lc.numer() % BigInt::from(p)).is_zero() {
        return Err(Error::invalid(format!(
            "leading coefficient not invertible mod {p}"
        )));
    }
    let h = squarefree_part(g)?;
    let hb = ModPoly::from_unipoly(&h, p)?;
    if hb.degree() <= 1 {
        return Ok(true);
    }
    let xp = ModPoly::x(p).pow_mod(p, &hb);
    Ok(xp == ModPoly::x(p).rem(&hb))
}

/// Roots of `x` modulo prime `p`, plain residue evaluation; used by tests.
pub fn brute_force_roots(f: &ModPoly) -> Vec<u64> {
    (0..f.p).filter(|&x| f.eval(x) == 0).collect()
}

/// `a^e mod p` for residues, re-exported for convenience.
pub fn residue_pow(a: u64, e: u64, p: u64) -> u64 {
    pow_mod(a, e, p)
}
