//! The independent checker. It relies only on the exact arithmetic kernel and
//! recomputes every claim from the recurrence and the witness data.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::coverage::coverage_check;
use super::model::*;
use crate::algebra::matrix::{IntMatrix, ModMatrix};
use crate::algebra::modp::ModPoly;
use crate::algebra::primes::{factorial_tail_bound, factorize, is_prime};
use crate::algebra::stirling::falling_factorial_coeffs;
use crate::algebra::valuation::{padic_valuation, reduce_rational_mod, Valuation};
use crate::algebra::UniPoly;

/// Largest index at which a sequence term is evaluated exactly.
const EXACT_INDEX_LIMIT: u64 = 100_000;
/// Largest period stepped through for a modulus witness.
const PERIOD_LIMIT: u64 = 50_000_000;
/// Largest partial-sum length accepted.
const TERMS_LIMIT: u64 = 100_000;
/// Largest `|exponent|` in a relation.
const EXPONENT_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// Index of the offending entry, if the failure is local to one.
    pub entry: Option<usize>,
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.entry {
            Some(i) => write!(f, "entry {i}: {}: {}", self.check, self.detail),
            None => write!(f, "{}: {}", self.check, self.detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

type Check<T = ()> = std::result::Result<T, Rejection>;

fn fail<T>(entry: Option<usize>, check: &'static str, detail: impl Into<String>) -> Check<T> {
    Err(Rejection { entry, check, detail: detail.into() })
}

/// Verify `cert` against the recurrence `input`.
pub fn verify(input: &InputEcho, cert: &Certificate) -> Verdict {
    match verify_inner(input, cert) {
        Ok(()) => Verdict::Accept,
        Err(r) => Verdict::Reject(r),
    }
}

fn verify_inner(input: &InputEcho, cert: &Certificate) -> Check {
    if *input != cert.input {
        return fail(None, "input echo", "certificate was issued for a different recurrence");
    }
    let w = &cert.working;
    check_working(input, w)?;
    let pairs: Vec<(BigInt, BigInt)> = cert.entries.iter().map(|e| (e.modulus.clone(), e.residue.clone())).collect();
    if !coverage_check(&pairs) {
        return fail(None, "coverage", "progressions do not partition the integers");
    }
    let centers: BTreeSet<BigInt> = cert.valuation_entries().map(|(_, v)| v.center.clone()).collect();
    if cert.zeros.windows(2).any(|p| p[0] >= p[1]) {
        return fail(None, "zeros", "zero list is not strictly increasing");
    }
    let zeros: BTreeSet<BigInt> = cert.zeros.iter().cloned().collect();
    if zeros != centers {
        return fail(None, "zeros", "claimed zeros differ from the certified centers");
    }
    for (i, e) in cert.entries.iter().enumerate() {
        match &e.witness {
            Witness::Modulus(mw) => check_modulus(w, i, e, mw)?,
            Witness::Valuation(vw) => check_valuation(w, i, e, vw)?,
        }
    }
    Ok(())
}

fn check_working(input: &InputEcho, w: &WorkingSpec) -> Check {
    let d1 = input.coefficients.len();
    let d2 = w.coefficients.len();
    if d1 == 0 || input.initial.len() != d1 || input.coefficients[d1 - 1].is_zero() {
        return fail(None, "input", "malformed input recurrence");
    }
    if d2 == 0 || w.initial.len() != d2 || w.coefficients[d2 - 1].is_zero() {
        return fail(None, "working", "malformed working recurrence");
    }
    if w.ell.is_zero() || w.scale.is_zero() {
        return fail(None, "working", "scaling factors must be nonzero");
    }
    // both sides are recurrences of order ≤ d1 + d2, so agreement on that many
    // consecutive terms gives agreement everywhere
    let n = d1 + d2;
    let a = forward_terms_rational(&input.coefficients, &input.initial, n);
    let wc: Vec<BigRational> = w.coefficients.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let wi: Vec<BigRational> = w.initial.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let b = forward_terms_rational(&wc, &wi, n);
    let ell = BigRational::from_integer(w.ell.clone());
    let mut f = BigRational::from_integer(w.scale.clone());
    for k in 0..n {
        if b[k] != &a[k] * &f {
            return fail(None, "working", format!("working term {k} does not match the scaled input"));
        }
        f *= &ell;
    }
    Ok(())
}

fn forward_terms_rational(c: &[BigRational], init: &[BigRational], n: usize) -> Vec<BigRational> {
    let d = c.len();
    let mut u: Vec<BigRational> = init.to_vec();
    while u.len() < n {
        let k = u.len();
        let v = (0..d).fold(BigRational::zero(), |acc, i| acc + &c[i] * &u[k - 1 - i]);
        u.push(v);
    }
    u.truncate(n);
    u
}

/// Exact `u_n` of the working recurrence.
fn exact_term(w: &WorkingSpec, n: &BigInt) -> Option<BigRational> {
    if n.abs() > BigInt::from(EXACT_INDEX_LIMIT) {
        return None;
    }
    let n = n.to_i64()?;
    let d = w.coefficients.len() as i64;
    if (0..d).contains(&n) {
        return Some(BigRational::from_integer(w.initial[n as usize].clone()));
    }
    let c: Vec<BigRational> = w.coefficients.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut win: Vec<BigRational> = w.initial.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    if n >= d {
        for _ in d..=n {
            let v = (0..d as usize).fold(BigRational::zero(), |acc, i| acc + &c[i] * &win[d as usize - 1 - i]);
            win.remove(0);
            win.push(v);
        }
        win.last().cloned()
    } else {
        // u_k = (u_{k+d} − c_1 u_{k+d−1} − … − c_{d−1} u_{k+1}) / c_d
        let du = d as usize;
        for _ in n..0 {
            let mut v = win[du - 1].clone();
            for i in 0..du - 1 {
                v -= &c[i] * &win[du - 2 - i];
            }
            v /= &c[du - 1];
            win.pop();
            win.insert(0, v);
        }
        win.first().cloned()
    }
}

fn check_modulus(w: &WorkingSpec, i: usize, e: &ProgressionEntry, mw: &ModulusWitness) -> Check {
    let at = Some(i);
    let m = mw.m;
    if m < 2 {
        return fail(at, "modulus", "m must be at least 2");
    }
    let cd = w.coefficients.last().unwrap();
    if !cd.gcd(&BigInt::from(m)).is_one() {
        return fail(at, "modulus", format!("gcd(m, c_d) ≠ 1 for m = {m}"));
    }
    if mw.period == 0 || mw.period > PERIOD_LIMIT {
        return fail(at, "modulus", "period out of range");
    }
    let a = ModMatrix::from_int(&IntMatrix::companion(&w.coefficients), m);
    let mb = BigInt::from(m);
    let init: Vec<u64> = w.initial.iter().rev().map(|x| x.mod_floor(&mb).to_u64().unwrap()).collect();
    let start = a.pow_big(&e.residue).mul_vec(&init);
    let step = a.pow_big(&e.modulus);
    let mut s = start.clone();
    for k in 0..mw.period {
        if *s.last().unwrap() == 0 {
            return fail(at, "modulus", format!("term {k} of the progression is 0 mod {m}"));
        }
        s = step.mul_vec(&s);
    }
    if s != start {
        return fail(at, "modulus", format!("{} is not a period mod {m}", mw.period));
    }
    Ok(())
}

fn check_valuation(w: &WorkingSpec, i: usize, e: &ProgressionEntry, v: &ValuationWitness) -> Check {
    let at = Some(i);
    let p = v.p;
    let pb = BigInt::from(p);
    if !v.stride.is_positive() {
        return fail(at, "valuation", "stride must be positive");
    }
    if p < 3 || !is_prime(p) {
        return fail(at, "prime", format!("{p} is not an odd prime"));
    }
    let jump = BigInt::from(v.l) * num_traits::pow(pb.clone(), v.e as usize);
    if e.modulus != &v.stride * &jump {
        return fail(at, "valuation", "entry modulus differs from stride·L·p^e");
    }
    if v.center.mod_floor(&e.modulus) != e.residue {
        return fail(at, "valuation", "center does not lie in the progression");
    }
    match exact_term(w, &v.center) {
        Some(x) if x.is_zero() => {}
        Some(_) => return fail(at, "valuation", format!("u_{} is not zero", v.center)),
        None => return fail(at, "valuation", "center too far out to evaluate"),
    }
    let d = w.coefficients.len();
    let cd = w.coefficients.last().unwrap();
    if (cd % &pb).is_zero() {
        return fail(at, "prime", "p divides the constant coefficient");
    }
    let comp = IntMatrix::companion(&w.coefficients);
    // admissibility of p for A^stride, and minimality of L
    let node_p = comp.pow_mod_big(&v.stride, &pb);
    let cp = ModPoly::from_bigints(p, &node_p.charpoly(Some(&pb)));
    if !cp.is_squarefree() || !cp.splits() {
        return fail(at, "prime", "characteristic polynomial mod p is not squarefree and split");
    }
    if v.l == 0 || !node_p.pow_mod(v.l, &pb).is_identity_mod(&pb) {
        return fail(at, "prime", "A^(stride·L) is not the identity mod p");
    }
    for (q, _) in factorize(v.l) {
        if node_p.pow_mod(v.l / q, &pb).is_identity_mod(&pb) {
            return fail(at, "prime", format!("L is not minimal: L/{q} also works"));
        }
    }
    // the leading nonzero coefficient
    if v.j0 == 0 || v.terms_used < v.j0 as u64 || v.terms_used > TERMS_LIMIT {
        return fail(at, "series", "bad coefficient index or term count");
    }
    let tail = factorial_tail_bound(v.terms_used + 1, p);
    if v.nu >= tail {
        return fail(at, "series", format!("ν = {} is not below the tail bound {tail}", v.nu));
    }
    let prec = tail as usize;
    let m = num_traits::pow(pb.clone(), prec);
    let m1 = &m * &pb;
    let al = comp.pow_mod_big(&v.stride, &m1).pow_mod(v.l, &m1);
    let diff = al.sub(&IntMatrix::identity(d)).reduce_mod(&m1);
    let Some(b) = diff.div_exact(&pb) else {
        return fail(at, "series", "A^(stride·L) − I is not divisible by p");
    };
    let b = b.reduce_mod(&m);
    let mut beta = Vec::with_capacity(d);
    for k in (0..d as i64).rev() {
        let t = exact_term(w, &(&v.center + k)).and_then(|x| reduce_rational_mod(&x, &m));
        match t {
            Some(t) => beta.push(t),
            None => return fail(at, "series", "center state is not p-integral"),
        }
    }
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    let mut ppow = BigInt::one();
    let mut state = beta;
    for k in 0..=v.terms_used as usize {
        if k > 0 {
            fact *= k;
            ppow *= &pb;
            state = b.mul_vec_mod(&state, &m);
        }
        if k >= v.j0 {
            let s = &falling_factorial_coeffs(k)[v.j0];
            let wk = state.last().unwrap();
            sum += BigRational::new(s * wk * &ppow, fact.clone());
        }
    }
    let val = padic_valuation(&sum, p).map_err(|err| Rejection { entry: at, check: "series", detail: err.to_string() })?;
    if val != Valuation::Finite(v.nu as i64) {
        return fail(at, "series", format!("partial sum has valuation {val}, claimed {}", v.nu));
    }
    // dominance after the substitution x = p^e·y
    let (nu, j0, ee) = (v.nu, v.j0 as u64, v.e as u64);
    let m_max = (nu + 1) * (p - 1) / (p - 2) + 1;
    for mm in j0 + 1..=m_max.max(j0 + 1) {
        if nu + j0 * ee >= factorial_tail_bound(mm, p) + mm * ee {
            return fail(at, "jump", format!("coefficient {mm} is not dominated after the substitution"));
        }
    }
    // vanishing of the lower coefficients
    if v.zero_proofs.len() != v.j0 - 1 {
        return fail(at, "zero proof", format!("expected {} zero proofs", v.j0 - 1));
    }
    for (k, zp) in v.zero_proofs.iter().enumerate() {
        if zp.j != k + 1 {
            return fail(at, "zero proof", format!("proof {k} is for j = {}, expected {}", zp.j, k + 1));
        }
        replay_zero_proof(w, &v.center, zp).map_err(|detail| Rejection { entry: at, check: "zero proof", detail })?;
    }
    Ok(())
}

fn poly(v: &[BigRational]) -> UniPoly {
    UniPoly::new(v.to_vec())
}

/// `x^e mod h` for any integer `e`.
fn ring_pow(x: &UniPoly, e: &BigInt, h: &UniPoly) -> Option<UniPoly> {
    let base = if e.is_negative() { x.inverse_mod(h)? } else { x.rem(h) };
    let mut acc = UniPoly::one().rem(h);
    let mut b = base;
    let mag = e.abs();
    for bit in 0..mag.bits() {
        if mag.bit(bit) {
            acc = acc.mul_mod(&b, h);
        }
        if bit + 1 < mag.bits() {
            b = b.mul_mod(&b, h);
        }
    }
    Some(acc)
}

fn replay_zero_proof(w: &WorkingSpec, center: &BigInt, zp: &ZeroProofData) -> std::result::Result<(), String> {
    let d = w.coefficients.len();
    let h = poly(&zp.modulus);
    if h.degree() < 1 || h.gcd(&h.derivative()).degree() != 0 {
        return Err("defining polynomial must be squarefree of positive degree".into());
    }
    if zp.roots.len() != d || zp.alphas.len() != d {
        return Err("need one root and one coefficient per order".into());
    }
    let roots: Vec<UniPoly> = zp.roots.iter().map(|r| poly(r).rem(&h)).collect();
    let alphas: Vec<UniPoly> = zp.alphas.iter().map(|a| poly(a).rem(&h)).collect();
    // g(λ) = 0 with g = X^d − c_1 X^{d−1} − … − c_d
    let mut g = vec![BigRational::zero(); d + 1];
    g[d] = BigRational::one();
    for (i, c) in w.coefficients.iter().enumerate() {
        g[d - 1 - i] = -BigRational::from_integer(c.clone());
    }
    let g = UniPoly::new(g);
    for (i, r) in roots.iter().enumerate() {
        if !g.compose_mod(r, &h).is_zero() {
            return Err(format!("root {i} does not satisfy the characteristic polynomial"));
        }
    }
    for i in 0..d {
        for j in 0..i {
            if (&roots[i] - &roots[j]).inverse_mod(&h).is_none() {
                return Err(format!("roots {j} and {i} coincide in some factor"));
            }
        }
    }
    for n in 0..d {
        let mut acc = UniPoly::zero();
        for (a, r) in alphas.iter().zip(&roots) {
            acc = &acc + &a.mul_mod(&r.pow_mod(n as u64, &h), &h);
        }
        if acc != UniPoly::constant(BigRational::from_integer(w.initial[n].clone())) {
            return Err(format!("coefficients do not reproduce u_{n}"));
        }
    }
    // relations
    let t = zp.independent.len();
    let mut seen = vec![false; d];
    for &k in &zp.independent {
        if k >= d || seen[k] {
            return Err("bad independent index".into());
        }
        seen[k] = true;
    }
    let mut forms: Vec<Option<Vec<BigRational>>> = vec![None; d];
    for (k, &i) in zp.independent.iter().enumerate() {
        let mut f = vec![BigRational::zero(); t];
        f[k] = BigRational::one();
        forms[i] = Some(f);
    }
    let limit = BigInt::from(EXPONENT_LIMIT);
    for rel in &zp.relations {
        if rel.index >= d || forms[rel.index].is_some() {
            return Err(format!("relation for index {} is misplaced", rel.index));
        }
        if rel.n.len() != t || rel.m.is_zero() || rel.torsion == 0 {
            return Err("malformed relation".into());
        }
        let tor = BigInt::from(rel.torsion);
        if (&rel.m * &tor).abs() > limit || rel.n.iter().any(|x| (x * &tor).abs() > limit) {
            return Err("relation exponents too large".into());
        }
        let lhs = ring_pow(&roots[rel.index], &(&rel.m * &tor), &h).ok_or("root is not a unit")?;
        let mut rhs = UniPoly::one().rem(&h);
        for (&k, n) in zp.independent.iter().zip(&rel.n) {
            rhs = rhs.mul_mod(&ring_pow(&roots[k], &(n * &tor), &h).ok_or("root is not a unit")?, &h);
        }
        if lhs != rhs {
            return Err(format!("relation for index {} does not hold", rel.index));
        }
        forms[rel.index] = Some(rel.n.iter().map(|n| BigRational::new(n.clone(), rel.m.clone())).collect());
    }
    let forms: Vec<Vec<BigRational>> = forms
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or(format!("root {i} is neither independent nor related")))
        .collect::<std::result::Result<_, _>>()?;
    // expand Σ_i α_i λ_i^center (Σ_k q_ik x_k)^j
    let node: Vec<UniPoly> = alphas
        .iter()
        .zip(&roots)
        .map(|(a, r)| ring_pow(r, center, &h).map(|x| a.mul_mod(&x, &h)))
        .collect::<Option<_>>()
        .ok_or("root is not a unit")?;
    for mu in multi_indices(zp.j, t) {
        let mut c = UniPoly::zero();
        for (a, q) in node.iter().zip(&forms) {
            let mut wgt = BigRational::one();
            for (qk, &ek) in q.iter().zip(&mu) {
                wgt *= num_traits::pow(qk.clone(), ek as usize);
            }
            c = &c + &a.scale(&wgt);
        }
        if !c.is_zero() {
            return Err(format!("coefficient of monomial {mu:?} does not vanish"));
        }
    }
    Ok(())
}

fn multi_indices(j: usize, t: usize) -> Vec<Vec<u32>> {
    if t == 0 {
        return if j == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=j {
        for mut rest in multi_indices(j - first, t - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}
