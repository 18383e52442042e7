//! Dovetailed search over residue classes: zero probes against modulus witnesses.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{matrix_order_bound, ModMatrix};
use crate::error::{Error, Result};
use crate::lrs::{normalize_to_integer, reverse, SequenceSpec};

/// Modulus of the cheap zero prefilter (a Mersenne prime).
const FILTER_PRIME: u64 = (1 << 61) - 1;
/// Largest `|n|` at which a probe is confirmed by exact evaluation.
pub(crate) const EXACT_PROBE_LIMIT: i64 = 100_000;

/// `0, 1, −1, 2, −2, …`
pub(crate) fn probe_index(r: u64) -> i64 {
    if r == 0 {
        0
    } else if r % 2 == 1 {
        r.div_ceil(2) as i64
    } else {
        -((r / 2) as i64)
    }
}

/// All `n` with `|n| ≤ cap` and `u_n = 0`, by exact iteration in both
/// directions. Sorted ascending.
pub fn zero_search(spec: &SequenceSpec, cap: u64) -> Result<Vec<i64>> {
    let d = spec.order();
    if d == 0 {
        return Ok((-(cap as i64)..=cap as i64).collect());
    }
    let forward = normalize_to_integer(&spec.recurrence.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect::<Vec<_>>(), &spec.initial)?.spec;
    let backward = reverse(spec)?.spec;
    let mut out: Vec<i64> = integer_zeros(&backward, cap)
        .into_iter()
        .filter(|&n| n > 0)
        .map(|n| -n)
        .collect();
    out.extend(integer_zeros(&forward, cap));
    out.sort_unstable();
    Ok(out)
}

fn integer_zeros(spec: &SequenceSpec, cap: u64) -> Vec<i64> {
    let c = spec.recurrence.coeffs();
    let d = c.len();
    let mut win: Vec<BigInt> = spec.integer_initial().expect("normalized spec");
    let mut out = Vec::new();
    for n in 0..=cap as i64 {
        let cur = if (n as usize) < d {
            win[n as usize].clone()
        } else {
            let v: BigInt = (0..d).map(|i| &c[i] * &win[d - 1 - i]).sum();
            win.remove(0);
            win.push(v.clone());
            v
        };
        if cur.is_zero() {
            out.push(n);
        }
    }
    out
}

/// How a residue class was closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum ClassResult {
    Zero(i64),
    Witness { m: u64, period: u64 },
}

/// Limits for one class search.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchLimits {
    pub modulus_cap: u64,
    pub probe_cap: u64,
    pub period_cap: u64,
    pub deadline: Instant,
}

/// The integer working recurrence with precomputed reductions.
pub(crate) struct Working<'a> {
    pub spec: &'a SequenceSpec,
    pub coeffs: Vec<BigInt>,
    pub init: Vec<BigInt>,
    charpoly: Vec<BigInt>,
}

impl<'a> Working<'a> {
    pub fn new(spec: &'a SequenceSpec) -> Result<Self> {
        let init = spec.integer_initial().ok_or_else(|| Error::invalid("working recurrence must be integral"))?;
        Ok(Working { spec, coeffs: spec.recurrence.coeffs().to_vec(), init, charpoly: spec.recurrence.charpoly_ints() })
    }

    pub fn cd(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    /// State `(u_{n+d−1}, …, u_n) mod m`, if `gcd(m, c_d) = 1` or `n ≥ 0`.
    pub fn state_mod(&self, n: &BigInt, m: u64) -> Option<Vec<u64>> {
        let mb = BigInt::from(m);
        let init: Vec<u64> = self.init.iter().rev().map(|x| x.mod_floor(&mb).to_u64().unwrap()).collect();
        Some(ModMatrix::companion_power(&self.coeffs, n, m)?.mul_vec(&init))
    }

    /// Period of the state sequence mod `m` (a multiple of it), stepped
    /// through only if it is at most `cap`.
    fn period_bound(&self, m: u64, cap: u64) -> Option<u64> {
        matrix_order_bound(&self.charpoly, m).filter(|&b| b <= cap)
    }

    fn is_zero_at(&self, n: i64) -> bool {
        n.abs() <= EXACT_PROBE_LIMIT && self.spec.evaluate(n).is_zero()
    }
}

struct Class {
    k: u64,
    fwd: Option<Vec<u64>>,
    bwd: Option<Vec<u64>>,
    probes: u64,
    result: Option<ClassResult>,
}

/// Period of `start` under `step` and the offsets within one period where
/// the last coordinate is 0. `None` if the period exceeds `cap`.
fn cycle(start: &[u64], step: &ModMatrix, cap: u64) -> Option<(u64, Vec<u64>)> {
    let mut s = start.to_vec();
    let mut zeros = Vec::new();
    for t in 0..cap {
        if *s.last().unwrap() == 0 {
            zeros.push(t);
        }
        s = step.mul_vec(&s);
        if s == start {
            return Some((t + 1, zeros));
        }
    }
    None
}

/// Close every class `k` of the progressions `z + S·(k + M·n)`: either find a
/// zero or a modulus `m` under which the class never vanishes. Each round
/// probes one index in every open class, then tries one modulus.
pub(crate) fn search_classes(
    w: &Working,
    z: i64,
    stride: &BigInt,
    jump: u64,
    classes: &[u64],
    lim: SearchLimits,
) -> Result<Vec<ClassResult>> {
    let zb = BigInt::from(z);
    let big_step = stride * jump;
    let q = FILTER_PRIME;
    let filter = (|| {
        let fwd = ModMatrix::companion_power(&w.coeffs, &big_step, q)?;
        let bwd = ModMatrix::companion_power(&w.coeffs, &-&big_step, q)?;
        let small = ModMatrix::companion_power(&w.coeffs, stride, q)?;
        let base = w.state_mod(&zb, q)?;
        Some((fwd, bwd, small, base))
    })();
    let mut open: Vec<Class> = Vec::with_capacity(classes.len());
    if let Some((_, _, small, base)) = &filter {
        // states at z + S·k for the requested k, walking k upward
        let mut s = base.clone();
        let mut at = 0u64;
        for &k in classes {
            if k < at {
                s = small.pow(k).mul_vec(base);
            } else {
                s = small.pow(k - at).mul_vec(&s);
            }
            at = k;
            open.push(Class { k, fwd: Some(s.clone()), bwd: Some(s.clone()), probes: 0, result: None });
        }
    } else {
        open.extend(classes.iter().map(|&k| Class { k, fwd: None, bwd: None, probes: 0, result: None }));
    }
    let cd = w.cd().clone();
    let mut moduli = (2..=lim.modulus_cap).filter(move |&m| cd.gcd(&BigInt::from(m)).is_one());
    let mut moduli_done = false;
    let mut remaining = open.len();
    let mut round = 0u64;
    while remaining > 0 {
        if Instant::now() >= lim.deadline {
            return Err(Error::Budget("time budget exhausted during class search".into()));
        }
        let n = probe_index(round);
        let mut probed = false;
        for c in open.iter_mut().filter(|c| c.result.is_none() && c.probes < lim.probe_cap) {
            probed = true;
            c.probes += 1;
            let candidate = match &filter {
                Some((fwd, bwd, _, _)) => {
                    let r = if n >= 0 {
                        let s = c.fwd.as_mut().unwrap();
                        let r = *s.last().unwrap();
                        *s = fwd.mul_vec(s);
                        r
                    } else {
                        let s = c.bwd.as_mut().unwrap();
                        *s = bwd.mul_vec(s);
                        *s.last().unwrap()
                    };
                    r == 0
                }
                None => true,
            };
            if candidate {
                let idx = &zb + stride * (BigInt::from(c.k) + BigInt::from(jump) * n);
                if let Some(idx) = idx.to_i64() {
                    if w.is_zero_at(idx) {
                        c.result = Some(ClassResult::Zero(idx));
                        remaining -= 1;
                    }
                }
            }
        }
        if remaining == 0 {
            break;
        }
        let m = if moduli_done { None } else { moduli.next() };
        match m {
            Some(m) => {
                let Some(bound) = w.period_bound(m, lim.period_cap) else {
                    round += 1;
                    continue;
                };
                let (Some(start), Some(step)) = (w.state_mod(&zb, m), ModMatrix::companion_power(&w.coeffs, stride, m)) else {
                    round += 1;
                    continue;
                };
                if let Some((period, zeros)) = cycle(&start, &step, bound) {
                    let g = jump.gcd(&period);
                    let mut hit = vec![false; g as usize];
                    for t in zeros {
                        hit[(t % g) as usize] = true;
                    }
                    for c in open.iter_mut().filter(|c| c.result.is_none()) {
                        if !hit[(c.k % g) as usize] {
                            c.result = Some(ClassResult::Witness { m, period: period / g });
                            remaining -= 1;
                        }
                    }
                }
            }
            None => {
                moduli_done = true;
                if !probed {
                    return Err(Error::ResourceLimit {
                        what: "class search (zero probes and moduli exhausted)".into(),
                        cap: lim.modulus_cap,
                    });
                }
            }
        }
        round += 1;
    }
    Ok(open.into_iter().map(|c| c.result.unwrap()).collect())
}

/// Smallest `m ≤ cap` with `gcd(m, c_d) = 1` under which the sequence never
/// vanishes, with the period of the state map mod `m`.
pub fn modulus_witness_search(spec: &SequenceSpec, cap: u64, period_cap: u64) -> Result<Option<(u64, u64)>> {
    let w = Working::new(spec)?;
    for m in (2..=cap).filter(|&m| w.cd().gcd(&BigInt::from(m)).is_one()) {
        let Some(bound) = w.period_bound(m, period_cap) else { continue };
        let start = w.state_mod(&BigInt::zero(), m).unwrap();
        let step = ModMatrix::companion_power(&w.coeffs, &BigInt::one(), m).unwrap();
        if let Some((period, zeros)) = cycle(&start, &step, bound) {
            if zeros.is_empty() {
                return Ok(Some((m, period)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiSkolem {
    HasZero(i64),
    NoZero { m: u64, period: u64 },
    Inconclusive,
}

/// Interleave a zero search with a modulus-witness search on the whole
/// sequence; the first success wins.
pub fn bi_skolem_decide(spec: &SequenceSpec, budget: std::time::Duration, modulus_cap: u64, probe_cap: u64) -> Result<BiSkolem> {
    let w = Working::new(spec)?;
    let lim = SearchLimits { modulus_cap, probe_cap, period_cap: 1 << 20, deadline: Instant::now() + budget };
    match search_classes(&w, 0, &BigInt::one(), 1, &[0], lim) {
        Ok(r) => Ok(match &r[0] {
            ClassResult::Zero(n) => BiSkolem::HasZero(*n),
            ClassResult::Witness { m, period } => BiSkolem::NoZero { m: *m, period: *period },
        }),
        Err(Error::Budget(_)) | Err(Error::ResourceLimit { .. }) => Ok(BiSkolem::Inconclusive),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn spec(c: &[i64], u: &[i64]) -> SequenceSpec {
        SequenceSpec::from_i64(c, u).unwrap()
    }

    #[test]
    fn probe_order() {
        let v: Vec<i64> = (0..5).map(probe_index).collect();
        assert_eq!(v, vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn zero_search_examples() {
        assert_eq!(zero_search(&spec(&[1, 1], &[0, 1]), 50).unwrap(), vec![0]);
        let ex2 = spec(&[6, -26, 66, -130, 150, -125], &[0, 3, 11, -12, -125, -177]);
        assert_eq!(zero_search(&ex2, 50).unwrap(), vec![0]);
        let ex3 = spec(&[6, -25, 66, -120, 150, -89, 18, -1], &[0, 0, -48, -120, 0, 520, 624, -2016]);
        assert_eq!(zero_search(&ex3, 50).unwrap(), vec![0, 1, 4]);
        // u_n = 2^n − 3: no zeros; u_{-n} side included
        assert!(zero_search(&spec(&[3, -2], &[-2, -1]), 30).unwrap().is_empty());
    }

    #[test]
    fn bi_skolem_examples() {
        let t = Duration::from_secs(10);
        assert_eq!(bi_skolem_decide(&spec(&[1, 1], &[0, 1]), t, 100, 100).unwrap(), BiSkolem::HasZero(0));
        assert_eq!(bi_skolem_decide(&spec(&[1], &[1]), t, 100, 100).unwrap(), BiSkolem::NoZero { m: 2, period: 1 });
        assert_eq!(modulus_witness_search(&spec(&[1], &[1]), 10, 100).unwrap(), Some((2, 1)));
    }

    #[test]
    fn class_witnesses_hold() {
        // Fibonacci: F_{3n+1}, F_{3n+2} are odd
        let s = spec(&[1, 1], &[0, 1]);
        let w = Working::new(&s).unwrap();
        let lim = SearchLimits { modulus_cap: 50, probe_cap: 0, period_cap: 1000, deadline: Instant::now() + Duration::from_secs(5) };
        let r = search_classes(&w, 0, &BigInt::one(), 3, &[1, 2], lim).unwrap();
        assert_eq!(r, vec![ClassResult::Witness { m: 2, period: 1 }; 2]);
    }
}
