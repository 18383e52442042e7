use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::primes::{factorial_valuation, valuation_u64};
use crate::algebra::valuation::{int_valuation, mod_inverse};
use crate::algebra::{squarefree_part, ModPoly, UniPoly};
use crate::error::{Error, Result};
use crate::lrs::SequenceSpec;

fn pow_big(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Lift each simple root of `g mod p` to a root modulo `p^precision`.
pub fn hensel_lift_roots(g: &UniPoly, p: u64, precision: u32) -> Result<Vec<BigInt>> {
    let h = squarefree_part(g)?;
    let (hz, _) = h.to_primitive_integer();
    if (hz.last().unwrap() % BigInt::from(p)).is_zero() {
        return Err(Error::invalid(format!("leading coefficient divisible by {p}")));
    }
    let hb = ModPoly::from_bigints(p, &hz);
    if !hb.is_squarefree() {
        return Err(Error::invalid(format!("{p} divides the discriminant")));
    }
    let roots = hb.distinct_roots();
    if roots.len() as i64 != hb.degree() {
        return Err(Error::invalid(format!("polynomial does not split mod {p}")));
    }
    let dz = crate::algebra::zpoly::derivative(&hz);
    let target = pow_big(p, precision.max(1));
    let mut out = Vec::with_capacity(roots.len());
    for r0 in roots {
        let mut r = BigInt::from(r0);
        let mut prec = 1u32;
        while prec < precision {
            prec = (2 * prec).min(precision);
            let m = pow_big(p, prec);
            let fv = crate::algebra::zpoly::eval(&hz, &r).mod_floor(&m);
            let dv = crate::algebra::zpoly::eval(&dz, &r).mod_floor(&m);
            let inv = mod_inverse(&dv, &m).expect("simple root");
            r = (r - fv * inv).mod_floor(&m);
        }
        out.push(r.mod_floor(&target));
    }
    Ok(out)
}

/// `log(x) mod p^precision` for `x ≡ 1 (mod p)`, `p` odd.
pub fn padic_log(x: &BigInt, p: u64, precision: u32) -> Result<BigInt> {
    if p < 3 {
        return Err(Error::invalid("p-adic logarithm needs an odd prime"));
    }
    let m = pow_big(p, precision);
    let pb = BigInt::from(p);
    let y = (x - BigInt::one()).mod_floor(&(&m * &pb));
    if !(&y % &pb).is_zero() {
        return Err(Error::invalid(format!("argument is not 1 mod {p}")));
    }
    let t = &y / &pb; // y = p·t
    let mut acc = BigInt::zero();
    let mut tk = BigInt::one();
    let mut k = 1u64;
    // v(y^k / k) ≥ k − v_p(k)
    loop {
        let vk = valuation_u64(k, p) as u64;
        // k − log_p(k) is increasing, so past this point every term vanishes
        if k > precision as u64 + k.ilog(p) as u64 {
            break;
        }
        tk = (&tk * &t).mod_floor(&m);
        if k >= vk {
            let e = (k - vk) as u32;
            if e < precision {
                let unit = BigInt::from(k / p.pow(vk as u32));
                let term = &tk * pow_big(p, e) * mod_inverse(&unit, &m).unwrap();
                if k % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
                acc = acc.mod_floor(&m);
            }
        }
        k += 1;
    }
    Ok(acc)
}

/// Solve `a·x = b` modulo `m = p^k`, choosing unit pivots.
pub fn solve_mod(a: &[Vec<BigInt>], b: &[BigInt], m: &BigInt, p: u64) -> Option<Vec<BigInt>> {
    let n = a.len();
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| r.iter().chain(std::iter::once(bi)).map(|x| x.mod_floor(m)).collect())
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !(&rows[i][c] % &pb).is_zero())?;
        rows.swap(c, pr);
        let inv = mod_inverse(&rows[c][c], m)?;
        for x in rows[c].iter_mut() {
            *x = (&*x * &inv).mod_floor(m);
        }
        for i in 0..n {
            if i != c && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=n {
                    let t = &f * &rows[c][j];
                    rows[i][j] = (&rows[i][j] - t).mod_floor(m);
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

/// Independent route to `v_p(a_j)`: with Hensel-lifted roots `λ_i`, Vandermonde
/// coefficients `α_i` and `μ_i = λ_i^L`, `a_j = Σ_i α_i (log μ_i)^j / j!`.
/// Returns `None` if the valuation is not determined at this precision.
pub fn coefficient_valuation_via_logs(
    spec: &SequenceSpec,
    p: u64,
    l: u64,
    j: usize,
    precision: u32,
) -> Result<Option<u64>> {
    let d = spec.order();
    let m = pow_big(p, precision);
    let roots = hensel_lift_roots(&spec.recurrence.charpoly(), p, precision)?;
    if roots.len() != d {
        return Err(Error::invalid("recurrence is not simple"));
    }
    let init = spec
        .integer_initial()
        .ok_or_else(|| Error::invalid("initial values must be integers"))?;
    let vand: Vec<Vec<BigInt>> = (0..d)
        .map(|n| roots.iter().map(|r| r.modpow(&BigInt::from(n), &m)).collect())
        .collect();
    let alphas = solve_mod(&vand, &init, &m, p).ok_or_else(|| Error::internal("singular Vandermonde"))?;
    let mut total = BigInt::zero();
    for (a, r) in alphas.iter().zip(&roots) {
        let mu = r.modpow(&BigInt::from(l), &m);
        let lg = padic_log(&mu, p, precision)?;
        total += a * lg.modpow(&BigInt::from(j), &m);
    }
    let total = total.mod_floor(&m);
    let vf = factorial_valuation(j as u64, p);
    Ok(match int_valuation(&total, p) {
        Some(v) if v < precision as u64 => Some(v - vf),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_examples() {
        let g = UniPoly::from_i64(&[-5, 0, 1]);
        let r = hensel_lift_roots(&g, 11, 2).unwrap();
        assert!(r.contains(&BigInt::from(48)));
        let lin = hensel_lift_roots(&UniPoly::from_i64(&[-3, 1]), 7, 5).unwrap();
        assert_eq!(lin, vec![BigInt::from(3)]);
        assert!(hensel_lift_roots(&g, 7, 3).is_err());
        // Vieta: product of lifted roots ≡ −5 mod 11^6
        let r = hensel_lift_roots(&g, 11, 6).unwrap();
        let m = BigInt::from(11).pow(6);
        assert_eq!((&r[0] * &r[1]).mod_floor(&m), BigInt::from(-5).mod_floor(&m));
        assert_eq!((&r[0] + &r[1]).mod_floor(&m), BigInt::zero());
    }

    #[test]
    fn log_examples() {
        assert_eq!(padic_log(&BigInt::one(), 7, 5).unwrap(), BigInt::zero());
        assert!(padic_log(&BigInt::from(3), 7, 5).is_err());
        // log(8) mod 7^3 by direct summation of five terms
        let m = BigInt::from(343);
        let mut direct = num_rational::BigRational::zero();
        for k in 1..=5i64 {
            let term = num_rational::BigRational::new(num_traits::pow(BigInt::from(7), k as usize), BigInt::from(k));
            direct += if k % 2 == 1 { term } else { -term };
        }
        let want = crate::algebra::valuation::reduce_rational_mod(&direct, &m).unwrap();
        assert_eq!(padic_log(&BigInt::from(8), 7, 3).unwrap(), want);
        // homomorphism
        let m6 = BigInt::from(7).pow(6);
        let (x, y) = (BigInt::from(1 + 7 * 5), BigInt::from(1 + 49 * 3));
        let lhs = padic_log(&(&x * &y), 7, 6).unwrap();
        let rhs = (padic_log(&x, 7, 6).unwrap() + padic_log(&y, 7, 6).unwrap()).mod_floor(&m6);
        assert_eq!(lhs, rhs);
    }
}
