use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::factor_over_q;
use super::field::{AlgebraicNumber, NumberField};
use crate::algebra::matrix::row_echelon;
use crate::algebra::UniPoly;
use crate::error::{Error, Result};

/// A ring `ℚ[θ]/(h)` in which a squarefree polynomial splits, together with
/// its roots.
#[derive(Clone, Debug)]
pub struct SplittingRing {
    pub field: NumberField,
    pub roots: Vec<AlgebraicNumber>,
}

/// Build a ring containing all roots of the monic squarefree integer
/// polynomial `g`. For each irreducible factor a root is adjoined at a time,
/// and a primitive element `Y + cθ` is found by linear algebra; `degree_cap`
/// bounds the degree of the ring.
pub fn splitting_field(g: &[BigInt], degree_cap: usize) -> Result<SplittingRing> {
    let factors = factor_over_q(g)?;
    let mut h = UniPoly::x();
    let mut roots: Vec<UniPoly> = Vec::new();
    for f in &factors {
        // remaining factor over the current ring, monic, coefficients mod h
        let mut q: Vec<UniPoly> = f.iter().map(|c| UniPoly::from_ints(std::slice::from_ref(c))).collect();
        while q.len() > 2 {
            let n = h.degree() as usize;
            let k = q.len() - 1;
            if n * k > degree_cap {
                return Err(Error::ResourceLimit { what: "splitting ring degree".into(), cap: degree_cap as u64 });
            }
            let step = adjoin_root(&h, &q)?;
            roots = roots.iter().map(|r| r.compose_mod(&step.theta, &step.h)).collect();
            let mapped: Vec<UniPoly> = q.iter().map(|c| c.compose_mod(&step.theta, &step.h)).collect();
            let y = step.y.clone();
            q = deflate(&mapped, &y, &step.h);
            roots.push(y);
            h = step.h;
        }
        // linear: X + q0
        roots.push((-&q[0]).rem(&h));
    }
    let field = NumberField::new(h)?;
    let roots = roots.into_iter().map(|r| field.element(r)).collect();
    Ok(SplittingRing { field, roots })
}

struct Adjoined {
    /// New modulus, in the primitive element `θ'`.
    h: UniPoly,
    /// Old generator `θ` as a polynomial in `θ'`.
    theta: UniPoly,
    /// The adjoined root `Y` as a polynomial in `θ'`.
    y: UniPoly,
}

/// Adjoin a root `Y` of the monic `q ∈ R[Y]`, `R = ℚ[θ]/(h)`.
fn adjoin_root(h: &UniPoly, q: &[UniPoly]) -> Result<Adjoined> {
    let n = h.degree() as usize;
    let k = q.len() - 1;
    let dim = n * k;
    // elements of R[Y]/(q): k coefficient polynomials in θ
    let theta_elem: Vec<UniPoly> = {
        let mut v = vec![UniPoly::zero(); k];
        v[0] = UniPoly::x().rem(h);
        v
    };
    let y_elem: Vec<UniPoly> = {
        let mut v = vec![UniPoly::zero(); k];
        v[1] = UniPoly::one();
        v
    };
    let coords = |v: &[UniPoly]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); dim];
        for (b, c) in v.iter().enumerate() {
            for a in 0..n {
                out[b * n + a] = c.coeff(a);
            }
        }
        out
    };
    let shifts: Vec<i64> = if n == 1 { vec![0] } else { (1..=16).flat_map(|c| [c, -c]).collect() };
    for c in shifts {
        let cq = BigRational::from_integer(c.into());
        let mul_theta_prime = |v: &[UniPoly]| -> Vec<UniPoly> {
            // Y·v
            let top = v[k - 1].clone();
            let mut out: Vec<UniPoly> = (0..k)
                .map(|b| {
                    let prev = if b == 0 { UniPoly::zero() } else { v[b - 1].clone() };
                    (&prev - &top.mul_mod(&q[b], h)).rem(h)
                })
                .collect();
            if !cq.is_zero() {
                for (o, vb) in out.iter_mut().zip(v) {
                    *o = (&*o + &vb.mul_mod(&UniPoly::x(), h).scale(&cq)).rem(h);
                }
            }
            out
        };
        let mut pows = Vec::with_capacity(dim + 1);
        let mut cur = {
            let mut v = vec![UniPoly::zero(); k];
            v[0] = UniPoly::one();
            v
        };
        for _ in 0..=dim {
            pows.push(coords(&cur));
            cur = mul_theta_prime(&cur);
        }
        // columns: powers 0..dim−1; right-hand sides: θ'^dim, θ, Y
        let rhs = [pows[dim].clone(), coords(&theta_elem), coords(&y_elem)];
        let aug: Vec<Vec<BigRational>> = (0..dim)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..dim).map(|i| pows[i][r].clone()).collect();
                row.extend(rhs.iter().map(|v| v[r].clone()));
                row
            })
            .collect();
        let (red, piv) = row_echelon(aug);
        if piv.len() != dim || piv.iter().enumerate().any(|(i, &p)| p != i) {
            continue;
        }
        let sol = |j: usize| UniPoly::new(red.iter().map(|r| r[dim + j].clone()).collect());
        let mut hc: Vec<BigRational> = sol(0).coeffs().iter().map(|x| -x).collect();
        hc.resize(dim, BigRational::zero());
        hc.push(BigRational::one());
        return Ok(Adjoined { h: UniPoly::new(hc), theta: sol(1), y: sol(2) });
    }
    Err(Error::internal("no primitive element among small shifts"))
}

/// `q(X) / (X − y)` for monic `q` with `q(y) = 0` in `ℚ[θ]/(h)`.
fn deflate(q: &[UniPoly], y: &UniPoly, h: &UniPoly) -> Vec<UniPoly> {
    let k = q.len() - 1;
    let mut out = vec![UniPoly::zero(); k];
    let mut carry = UniPoly::zero();
    for i in (1..=k).rev() {
        carry = (&q[i] + &carry.mul_mod(y, h)).rem(h);
        out[i - 1] = carry.clone();
    }
    out
}
