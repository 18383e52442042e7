//! The coefficients `a_j` of the interpolating series
//! `f(x) = α·(I + pB)^x·β = Σ_k binom(x, k) p^k w_k`, `w_k = α B^k β`, are
//! `a_j = Σ_{k ≥ j} s(k, j) w_k p^k / k!`.
//!
//! Partial sums are accumulated modulo `p^N` with `N` at least the tail bound
//! at the last term examined. Since every omitted term has valuation at least
//! `T_K = min_{k > K}(k − v_p(k!))`, a partial sum with valuation `ν < T_K`
//! determines `v_p(a_j) = ν` exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::prime::{b_matrix, b_matrix_mod, matrix_order_mod_p};
use crate::algebra::primes::{factorial_tail_bound, factorial_valuation};
use crate::algebra::stirling::StirlingRows;
use crate::algebra::valuation::{int_valuation, mod_inverse, reduce_rational_mod};
use crate::algebra::IntMatrix;
use crate::error::{Error, Result};
use crate::lrs::SequenceSpec;

/// Supplies `B mod p^prec` and `β mod p^prec` for a fixed prime.
pub trait SeriesSource {
    fn prime(&self) -> u64;
    fn b_beta_mod(&self, prec: u32) -> Result<(IntMatrix, Vec<BigInt>)>;
}

/// The exact context of a recurrence with integer initial values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    pub p: u64,
    pub l: u64,
    pub a: IntMatrix,
    pub b: IntMatrix,
    /// Row selector `(0, …, 0, 1)`.
    pub alpha: Vec<BigInt>,
    /// State `(u_{d−1}, …, u_0)`.
    pub beta: Vec<BigInt>,
}

impl PadicContext {
    pub fn new(spec: &SequenceSpec, p: u64) -> Result<Self> {
        let beta: Vec<BigInt> = spec
            .integer_initial()
            .ok_or_else(|| Error::invalid("initial values must be integers"))?
            .into_iter()
            .rev()
            .collect();
        let a = spec.recurrence.companion();
        let l = matrix_order_mod_p(&a, p)?;
        let b = b_matrix(&a, l, p)?;
        let d = spec.order();
        let mut alpha = vec![BigInt::zero(); d];
        if d > 0 {
            alpha[d - 1] = BigInt::one();
        }
        Ok(PadicContext { p, l, a, b, alpha, beta })
    }

    /// `w_k = α B^k β` exactly.
    pub fn w(&self, k: usize) -> BigInt {
        let mut v = self.beta.clone();
        for _ in 0..k {
            v = self.b.mul_vec(&v);
        }
        v.last().cloned().unwrap_or_default()
    }
}

impl SeriesSource for PadicContext {
    fn prime(&self) -> u64 {
        self.p
    }

    fn b_beta_mod(&self, prec: u32) -> Result<(IntMatrix, Vec<BigInt>)> {
        let m = num_traits::pow(BigInt::from(self.p), prec as usize);
        Ok((self.b.reduce_mod(&m), self.beta.iter().map(|x| x.mod_floor(&m)).collect()))
    }
}

/// A sub-progression `z + S·n` of a recurrence, with `A_node = A^S`.
#[derive(Clone, Debug)]
pub struct NodeSeries<'a> {
    pub spec: &'a SequenceSpec,
    pub stride: BigInt,
    pub center: i64,
    pub p: u64,
    pub l: u64,
}

impl<'a> NodeSeries<'a> {
    /// State `(u_{z+d−1}, …, u_z)` reduced mod `m` (a power of `p`).
    pub fn center_state_mod(&self, m: &BigInt) -> Result<Vec<BigInt>> {
        let d = self.spec.order() as i64;
        (0..d)
            .rev()
            .map(|i| {
                reduce_rational_mod(&self.spec.evaluate(self.center + i), m)
                    .ok_or_else(|| Error::internal("term not p-integral"))
            })
            .collect()
    }
}

impl SeriesSource for NodeSeries<'_> {
    fn prime(&self) -> u64 {
        self.p
    }

    fn b_beta_mod(&self, prec: u32) -> Result<(IntMatrix, Vec<BigInt>)> {
        let pb = BigInt::from(self.p);
        let m1 = num_traits::pow(pb.clone(), prec as usize + 1);
        let a_node = self.spec.recurrence.companion().pow_mod_big(&self.stride, &m1);
        let al = a_node.pow_mod(self.l, &m1);
        let b = b_matrix_mod(&al, self.p, prec)?;
        let m = num_traits::pow(pb, prec as usize);
        Ok((b, self.center_state_mod(&m)?))
    }
}

/// Proof data for `v_p(a_j) = ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientCertificate {
    pub j: usize,
    pub nu: u64,
    /// Index `K` of the last term in the partial sum.
    pub terms_used: u64,
    /// `min_{k > K}(k − v_p(k!))`, strictly greater than `nu`.
    pub tail_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientResult {
    Certified(CoefficientCertificate),
    /// No certificate within the term budget; `v_p(a_j) ≥ floor`.
    ProbablyZero { floor: u64 },
}

impl CoefficientResult {
    pub fn certificate(&self) -> Option<&CoefficientCertificate> {
        match self {
            CoefficientResult::Certified(c) => Some(c),
            CoefficientResult::ProbablyZero { .. } => None,
        }
    }
}

/// Certified `v_p(a_j)` from partial sums of the coefficient series, examining terms
/// `k = j..=max_terms`. Stops at the first `K` that certifies.
pub fn coefficient_valuation(src: &dyn SeriesSource, j: usize, max_terms: u64) -> Result<CoefficientResult> {
    let p = src.prime();
    let max_terms = max_terms.max(j as u64);
    let prec = factorial_tail_bound(max_terms + 1, p).max(1) as u32;
    let (b, beta) = src.b_beta_mod(prec)?;
    let sums = partial_sums(p, &b, &beta, j, max_terms, prec);
    let mut floor = 0;
    for (k, s) in sums {
        let t = factorial_tail_bound(k + 1, p);
        floor = t;
        if let Some(nu) = int_valuation(&s, p) {
            if nu < t {
                return Ok(CoefficientResult::Certified(CoefficientCertificate {
                    j,
                    nu,
                    terms_used: k,
                    tail_bound: t,
                }));
            }
        }
    }
    Ok(CoefficientResult::ProbablyZero { floor })
}

/// Partial sums `Σ_{k=j}^{K} s(k,j) w_k p^k/k! mod p^prec` for `K = j..=max`.
pub fn partial_sums(
    p: u64,
    b: &IntMatrix,
    beta: &[BigInt],
    j: usize,
    max: u64,
    prec: u32,
) -> Vec<(u64, BigInt)> {
    let pb = BigInt::from(p);
    let m = num_traits::pow(pb.clone(), prec as usize);
    let mut v = beta.to_vec();
    let mut stirling = StirlingRows::new(j, m.clone());
    // unit part of k! and its inverse
    let mut unit_inv = BigInt::one();
    let mut acc = BigInt::zero();
    let mut out = Vec::new();
    for k in 0..=max {
        if k > 0 {
            v = b.mul_vec_mod(&v, &m);
            let mut kk = k;
            while kk % p == 0 {
                kk /= p;
            }
            unit_inv = (unit_inv * mod_inverse(&BigInt::from(kk), &m).unwrap()).mod_floor(&m);
            stirling.advance();
        }
        if k as usize >= j {
            let e = k - factorial_valuation(k, p);
            if e < prec as u64 {
                let w = v.last().cloned().unwrap_or_default();
                let term = stirling.get(j) * w * num_traits::pow(pb.clone(), e as usize) * &unit_inv;
                acc = (acc + term).mod_floor(&m);
            }
            out.push((k, acc.clone()));
        }
    }
    out
}

/// Truncated series evaluation of `f(n) = Σ_k binom(n, k) p^k w_k mod p^c`.
/// For `n ≥ 0` the sum is exact once `k > n`; for `n < 0` terms with
/// `k − v_p(k!) ≥ c` are dropped.
pub fn series_value_mod(src: &dyn SeriesSource, n: i64, c: u32) -> Result<BigInt> {
    let p = src.prime();
    let pb = BigInt::from(p);
    let m = num_traits::pow(pb.clone(), c as usize);
    let (b, beta) = src.b_beta_mod(c)?;
    let mut v = beta;
    let mut acc = BigInt::zero();
    // binom(n, k) p^k as an exact rational, updated multiplicatively
    let mut coef = BigRational::one();
    let mut k = 0u64;
    loop {
        if n >= 0 && k as i64 > n {
            break;
        }
        if n < 0 && factorial_tail_bound(k, p) >= c as u64 {
            break;
        }
        let w = v.last().cloned().unwrap_or_default();
        let cm = reduce_rational_mod(&coef, &m).expect("p-integral binomial term");
        acc = (acc + cm * w).mod_floor(&m);
        coef = coef * BigRational::new(BigInt::from(n - k as i64) * &pb, BigInt::from(k + 1));
        v = b.mul_vec_mod(&v, &m);
        k += 1;
    }
    Ok(acc)
}

/// Every computed term `s(k,j)·w_k·p^k/k!` has valuation at least
/// `k − v_p(k!)`, which is at least `⌈k(p−2)/(p−1)⌉`. Returns the first `k`
/// violating either inequality, if any.
pub fn check_tail_bounds(ctx: &PadicContext, j: usize, max: u64) -> Option<u64> {
    let p = ctx.p;
    let mut v = ctx.beta.clone();
    for k in 0..=max {
        if k > 0 {
            v = ctx.b.mul_vec(&v);
        }
        if (k as usize) < j {
            continue;
        }
        let lower = k - factorial_valuation(k, p);
        let ceil = (k * (p - 2)).div_ceil(p - 1);
        if lower < ceil {
            return Some(k);
        }
        let s = crate::algebra::falling_factorial_coeffs(k as usize)[j].clone();
        let w = v.last().cloned().unwrap_or_default();
        let num = s * w * num_traits::pow(BigInt::from(p), k as usize);
        let den: BigInt = (1..=k).map(BigInt::from).product();
        let term = BigRational::new(num, den);
        if let crate::algebra::Valuation::Finite(val) = crate::algebra::valuation::rational_valuation(&term, p) {
            if val < lower as i64 {
                return Some(k);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term_is_u0() {
        let s = SequenceSpec::from_i64(&[1, 1], &[22, 5]).unwrap();
        let ctx = PadicContext::new(&s, 11).unwrap();
        match coefficient_valuation(&ctx, 0, 40).unwrap() {
            CoefficientResult::Certified(c) => assert_eq!(c.nu, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fibonacci_first_coefficient() {
        let fib = SequenceSpec::from_i64(&[1, 1], &[0, 1]).unwrap();
        let ctx = PadicContext::new(&fib, 11).unwrap();
        assert_eq!(ctx.l, 10);
        let r = coefficient_valuation(&ctx, 1, 60).unwrap();
        let c = r.certificate().expect("certified");
        // F_{10n} = 55·n·(1 + O(11)) near n = 0, so v_11(a_1) = 1
        assert_eq!(c.nu, 1);
        assert!(c.nu < c.tail_bound);
        // stability under extra terms
        let r2 = coefficient_valuation(&ctx, 1, 70).unwrap();
        assert_eq!(r2.certificate().unwrap().nu, 1);
        assert_eq!(check_tail_bounds(&ctx, 1, 40), None);
    }

    #[test]
    fn series_matches_terms() {
        let fib = SequenceSpec::from_i64(&[1, 1], &[0, 1]).unwrap();
        let ctx = PadicContext::new(&fib, 11).unwrap();
        let m = BigInt::from(11).pow(8);
        for n in -6i64..=6 {
            let got = series_value_mod(&ctx, n, 8).unwrap();
            let want = reduce_rational_mod(&fib.evaluate(10 * n), &m).unwrap();
            assert_eq!(got, want, "n={n}");
        }
    }

    #[test]
    fn node_series_agrees_with_subsequence_context() {
        let s = SequenceSpec::from_i64(&[3, -1, 5], &[0, 2, -7]).unwrap();
        let p = crate::padic::select_prime(&s, crate::padic::PrimeStrategy::Smallest, 10_000).unwrap();
        let ctx = PadicContext::new(&s, p).unwrap();
        let node = NodeSeries { spec: &s, stride: BigInt::from(1), center: 0, p, l: ctx.l };
        for j in 0..3 {
            assert_eq!(
                coefficient_valuation(&ctx, j, 50).unwrap(),
                coefficient_valuation(&node, j, 50).unwrap()
            );
        }
    }
}
