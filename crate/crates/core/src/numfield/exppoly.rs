use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use super::field::{AlgebraicNumber, NumberField};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};

/// Coefficients `α_i` with `u_n = Σ_i α_i λ_i^n` for `n < d`, by Lagrange
/// interpolation: `α_i = Σ_n [X^n]ℓ_i · u_n`, `ℓ_i = ∏_{j≠i}(X − λ_j)/(λ_i − λ_j)`.
pub fn exp_poly_coefficients(
    field: &NumberField,
    roots: &[AlgebraicNumber],
    initial: &[BigRational],
) -> Result<Vec<AlgebraicNumber>> {
    let d = roots.len();
    if initial.len() != d {
        return Err(Error::invalid("need one initial value per root"));
    }
    let mut alphas = Vec::with_capacity(d);
    for i in 0..d {
        // numerator polynomial ∏_{j≠i}(X − λ_j), coefficients ascending
        let mut poly = vec![field.one()];
        let mut denom = field.one();
        for (j, r) in roots.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![field.zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = next[k + 1].add(c);
                next[k] = next[k].sub(&c.mul(r));
            }
            poly = next;
            denom = denom.mul(&roots[i].sub(r));
        }
        let inv = denom
            .inv()
            .ok_or_else(|| Error::invalid("roots are not pairwise distinct in every factor"))?;
        let mut a = field.zero();
        for (c, u) in poly.iter().zip(initial) {
            a = a.add(&c.scale(u));
        }
        alphas.push(a.mul(&inv));
    }
    Ok(alphas)
}

/// `Σ_i α_i λ_i^n`.
pub fn exp_poly_value(alphas: &[AlgebraicNumber], roots: &[AlgebraicNumber], n: i64) -> Option<AlgebraicNumber> {
    let mut acc = alphas.first()?.field().zero();
    for (a, r) in alphas.iter().zip(roots) {
        acc = acc.add(&a.mul(&r.pow_i64(n)?));
    }
    Some(acc)
}

/// Characteristic polynomial of multiplication by `x`, as `Res_t(h(t), X − x(t))`
/// interpolated from integer points.
fn char_poly(x: &AlgebraicNumber) -> Result<UniPoly> {
    let field = x.field();
    let h = field.modulus();
    let d = field.degree();
    let mut pts = Vec::with_capacity(d + 1);
    for k in 0..=d as i64 {
        let c = BigRational::from_integer(k.into());
        let lin = &UniPoly::constant(c.clone()) - x.rep();
        let v = if lin.is_zero() { BigRational::zero() } else { crate::algebra::resultant(h, &lin)? };
        pts.push((c, v));
    }
    Ok(UniPoly::interpolate(&pts))
}

/// Upper bound for the absolute logarithmic Weil height of `x`:
/// `log‖P‖₂ / deg P` for the primitive integer minimal polynomial `P`.
/// In a ring whose factors are conjugate fields the squarefree part of the
/// characteristic polynomial is that minimal polynomial.
pub fn height_upper_bound(x: &AlgebraicNumber) -> Result<f64> {
    let cp = char_poly(x)?;
    let sf = crate::algebra::squarefree_part(&cp)?;
    let (prim, _) = sf.to_primitive_integer();
    let deg = prim.len().saturating_sub(1).max(1) as f64;
    let norm2: f64 = prim
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(norm2.ln().max(0.0) / deg)
}

/// Bound on generators of the multiplicative relation lattice of `s` numbers
/// of height at most `h` in a field of degree `big_d`, with constant `c`:
/// `(c·s·h)^{s−1}·D^{s−1}·log(D+2)^{3s−3} / (log log(D+2))^{3s−4}`.
/// For `s ≤ 1` the bound is `1`. Saturates at `f64::MAX`.
pub fn masser_bound(s: usize, h: f64, big_d: usize, c: f64) -> BigInt {
    if s <= 1 {
        return BigInt::one();
    }
    let s_f = s as f64;
    let d = big_d.max(1) as f64;
    let l = (d + 2.0).ln();
    let ll = l.ln();
    let log_val = (s_f - 1.0) * (c * s_f * h).max(f64::MIN_POSITIVE).ln()
        + (s_f - 1.0) * d.ln()
        + (3.0 * s_f - 3.0) * l.ln()
        - (3.0 * s_f - 4.0) * ll.ln();
    let v = log_val.exp();
    if !v.is_finite() {
        return BigInt::from_f64(f64::MAX).unwrap();
    }
    BigInt::from_f64(v.ceil()).unwrap_or_else(BigInt::zero).max(BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::splitting_field;

    #[test]
    fn fibonacci_binet() {
        let g: Vec<BigInt> = [-1i64, -1, 1].iter().map(|&x| x.into()).collect();
        let ring = splitting_field(&g, 10).unwrap();
        let init = [BigRational::zero(), BigRational::one()];
        let alphas = exp_poly_coefficients(&ring.field, &ring.roots, &init).unwrap();
        let fib = [0i64, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (n, f) in fib.iter().enumerate() {
            let v = exp_poly_value(&alphas, &ring.roots, n as i64).unwrap();
            assert_eq!(v, ring.field.from_int(&(*f).into()));
        }
        // u_{−1} = 1, u_{−2} = −1
        assert_eq!(exp_poly_value(&alphas, &ring.roots, -2).unwrap(), ring.field.from_int(&(-1).into()));
    }

    #[test]
    fn height_of_golden_ratio() {
        let k = NumberField::new(UniPoly::from_i64(&[-1, -1, 1])).unwrap();
        let h = height_upper_bound(&k.generator()).unwrap();
        // true height log(φ)/2 ≈ 0.2406; the bound is log √3 / 2
        assert!(h >= 0.2406 && (h - 3f64.sqrt().ln() / 2.0).abs() < 1e-12);
        // 1 has minimal polynomial X − 1
        assert!((height_upper_bound(&k.one()).unwrap() - 2f64.sqrt().ln()).abs() < 1e-12);
    }

    #[test]
    fn masser_values() {
        assert_eq!(masser_bound(1, 5.0, 7, 1.0), BigInt::one());
        // s = 2, h = 1, D = 2: 2·2·log(4)³ / (log log 4)²
        let l: f64 = 4f64.ln();
        let want = (4.0 * l.powi(3) / l.ln().powi(2)).ceil();
        assert_eq!(masser_bound(2, 1.0, 2, 1.0), BigInt::from_f64(want).unwrap());
    }
}
