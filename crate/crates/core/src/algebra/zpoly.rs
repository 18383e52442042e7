//! Dense integer polynomials as ascending coefficient vectors.
//!
//! These helpers back the fraction-free routines (subresultant resultant,
//! primitive PRS gcd) used by [`UniPoly`](super::UniPoly).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(p: &[BigInt]) -> ZPoly {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: ZPoly = p.iter().map(|x| x / &c).collect();
    trim(&mut out);
    if out.last().is_some_and(|l| l.is_negative()) {
        for x in out.iter_mut() {
            *x = -x.clone();
        }
    }
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out: ZPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn derivative(p: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut out);
    out
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q b + r`.
pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("pseudo_rem by zero");
    let mut r: ZPoly = a.to_vec();
    trim(&mut r);
    let lb = &b[db];
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb.clone(), steps);
        for x in r.iter_mut() {
            *x *= &f;
        }
    }
    r
}

/// Exact division `a / b` over the integers; `None` if `b` does not divide `a`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    let mut r: ZPoly = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    let lb = &b[db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let (c, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    Some(q)
}

/// Resultant of two integer polynomials via the subresultant algorithm.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (Some(da0), Some(db0)) = (degree(a), degree(b)) else {
        return BigInt::zero();
    };
    if da0 == 0 {
        return num_traits::pow(a[0].clone(), db0);
    }
    if db0 == 0 {
        return num_traits::pow(b[0].clone(), da0);
    }
    let ca = content(a);
    let cb = content(b);
    let mut aa: ZPoly = a.iter().map(|x| x / &ca).collect();
    let mut bb: ZPoly = b.iter().map(|x| x / &cb).collect();
    trim(&mut aa);
    trim(&mut bb);
    let t = num_traits::pow(ca, db0) * num_traits::pow(cb, da0);
    let mut s = BigInt::one();
    if da0 < db0 {
        std::mem::swap(&mut aa, &mut bb);
        if da0 % 2 == 1 && db0 % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = degree(&aa).unwrap();
        let db = degree(&bb).unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&aa, &bb);
        aa = bb;
        let denom = &g * num_traits::pow(h.clone(), delta);
        bb = r.iter().map(|x| x / &denom).collect();
        trim(&mut bb);
        g = aa[degree(&aa).unwrap()].clone();
        // h <- h^(1-delta) g^delta
        if delta == 0 {
            // h unchanged
        } else if delta == 1 {
            h = g.clone();
        } else {
            h = num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1);
        }
        match degree(&bb) {
            None => return BigInt::zero(),
            Some(0) => {
                let d_a = degree(&aa).unwrap();
                let lb = bb[0].clone();
                let hh = if d_a == 0 {
                    h
                } else if d_a == 1 {
                    lb
                } else {
                    num_traits::pow(lb, d_a) / num_traits::pow(h, d_a - 1)
                };
                return s * t * hh;
            }
            Some(_) => {}
        }
    }
}

/// Primitive gcd (positive leading coefficient) via the primitive PRS.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if degree(&x).is_none() {
        return y;
    }
    if degree(&y).is_none() {
        return x;
    }
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = pseudo_rem(&x, &y);
        if degree(&r).is_none() {
            return primitive_part(&y);
        }
        if degree(&r) == Some(0) {
            return vec![BigInt::one()];
        }
        x = y;
        y = primitive_part(&r);
    }
}

/// Evaluate at an integer point.
pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn resultant_small() {
        // Res(X-2, X-3) = 2 - 3
        assert_eq!(resultant(&z(&[-2, 1]), &z(&[-3, 1])), BigInt::from(-1));
        assert_eq!(resultant(&z(&[-2, 0, 1]), &z(&[-3, 0, 1])), BigInt::from(1));
        assert_eq!(resultant(&z(&[-1, 0, 1]), &z(&[-1, 1])), BigInt::from(0));
        // Res(X^3 - 2, 3X^2) = 108
        assert_eq!(resultant(&z(&[-2, 0, 0, 1]), &z(&[0, 0, 3])), BigInt::from(108));
    }

    #[test]
    fn gcd_and_division() {
        let a = mul(&z(&[-1, 1]), &z(&[2, 0, 1]));
        let b = mul(&z(&[-1, 1]), &z(&[5, 1]));
        assert_eq!(gcd(&a, &b), z(&[-1, 1]));
        assert_eq!(div_exact(&a, &z(&[-1, 1])), Some(z(&[2, 0, 1])));
        assert_eq!(div_exact(&a, &z(&[5, 1])), None);
    }
}
