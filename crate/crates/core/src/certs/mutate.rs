//! Small corruptions of valid certificates, for exercising the verifier.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use super::model::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    ModulusPlusOne,
    ModulusMinusOne,
    NuPlusOne,
    NuMinusOne,
    DropEntry,
    SwapResidues,
    TruncateK,
    CorruptZeroProof,
    AddFakeZero,
    RemoveZero,
    ShiftResidue,
    ChangeL,
}

impl Mutation {
    pub const ALL: [Mutation; 12] = [
        Mutation::ModulusPlusOne,
        Mutation::ModulusMinusOne,
        Mutation::NuPlusOne,
        Mutation::NuMinusOne,
        Mutation::DropEntry,
        Mutation::SwapResidues,
        Mutation::TruncateK,
        Mutation::CorruptZeroProof,
        Mutation::AddFakeZero,
        Mutation::RemoveZero,
        Mutation::ShiftResidue,
        Mutation::ChangeL,
    ];

    /// Apply to entry or zero number `target` (taken modulo the number of
    /// candidates). `None` if the certificate has nothing this operator touches.
    pub fn apply(self, cert: &Certificate, target: usize) -> Option<Certificate> {
        let mut c = cert.clone();
        let modulus_idx: Vec<usize> = idx(&c, |w| matches!(w, Witness::Modulus(_)));
        let valuation_idx: Vec<usize> = idx(&c, |w| matches!(w, Witness::Valuation(_)));
        let pick = |v: &[usize]| (!v.is_empty()).then(|| v[target % v.len()]);
        match self {
            Mutation::ModulusPlusOne | Mutation::ModulusMinusOne => {
                let i = pick(&modulus_idx)?;
                let Witness::Modulus(mw) = &mut c.entries[i].witness else { unreachable!() };
                if self == Mutation::ModulusPlusOne {
                    mw.m += 1;
                } else {
                    if mw.m <= 2 {
                        return None;
                    }
                    mw.m -= 1;
                }
            }
            Mutation::NuPlusOne | Mutation::NuMinusOne => {
                let i = pick(&valuation_idx)?;
                let v = valuation_mut(&mut c, i);
                if self == Mutation::NuPlusOne {
                    v.nu += 1;
                } else {
                    v.nu = v.nu.checked_sub(1)?;
                }
            }
            Mutation::DropEntry => {
                if c.entries.is_empty() {
                    return None;
                }
                let n = c.entries.len();
                c.entries.remove(target % n);
            }
            Mutation::SwapResidues => {
                let i = pick(&valuation_idx)?;
                let j = pick(&modulus_idx)?;
                let (ri, rj) = (c.entries[i].residue.clone(), c.entries[j].residue.clone());
                if ri == rj {
                    return None;
                }
                c.entries[i].residue = rj;
                c.entries[j].residue = ri;
            }
            Mutation::TruncateK => {
                let i = pick(&valuation_idx)?;
                let v = valuation_mut(&mut c, i);
                if v.terms_used <= v.j0 as u64 {
                    return None;
                }
                v.terms_used -= 1;
            }
            Mutation::CorruptZeroProof => {
                let with: Vec<usize> = valuation_idx
                    .iter()
                    .copied()
                    .filter(|&i| matches!(&c.entries[i].witness, Witness::Valuation(v) if !v.zero_proofs.is_empty()))
                    .collect();
                let i = pick(&with)?;
                let v = valuation_mut(&mut c, i);
                let k = target % v.zero_proofs.len();
                let zp = &mut v.zero_proofs[k];
                if let Some(rel) = zp.relations.first_mut() {
                    match rel.n.first_mut() {
                        Some(n) => *n += 1,
                        None => rel.m += 1,
                    }
                } else if let Some(a) = zp.alphas.first_mut() {
                    // no relations: perturb the expansion coefficients instead
                    match a.first_mut() {
                        Some(x) => *x += num_rational::BigRational::one(),
                        None => a.push(num_rational::BigRational::one()),
                    }
                } else {
                    return None;
                }
            }
            Mutation::AddFakeZero => {
                let next = c.zeros.last().map(|z| z + 1).unwrap_or_else(BigInt::one);
                c.zeros.push(next);
            }
            Mutation::RemoveZero => {
                if c.zeros.is_empty() {
                    return None;
                }
                let n = c.zeros.len();
                c.zeros.remove(target % n);
            }
            Mutation::ShiftResidue => {
                let cand: Vec<usize> = (0..c.entries.len()).filter(|&i| c.entries[i].modulus > BigInt::one()).collect();
                let i = pick(&cand)?;
                let e = &mut c.entries[i];
                e.residue = (&e.residue + BigInt::one()).mod_floor(&e.modulus);
            }
            Mutation::ChangeL => {
                let i = pick(&valuation_idx)?;
                valuation_mut(&mut c, i).l += 1;
            }
        }
        Some(c)
    }
}

fn idx(c: &Certificate, f: impl Fn(&Witness) -> bool) -> Vec<usize> {
    (0..c.entries.len()).filter(|&i| f(&c.entries[i].witness)).collect()
}

fn valuation_mut(c: &mut Certificate, i: usize) -> &mut ValuationWitness {
    match &mut c.entries[i].witness {
        Witness::Valuation(v) => v,
        Witness::Modulus(_) => unreachable!(),
    }
}

/// Draw mutations until `count` applicable ones are found or attempts run out.
pub fn random_mutations<R: Rng>(cert: &Certificate, count: usize, rng: &mut R) -> Vec<(Mutation, Certificate)> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * 50 {
        if out.len() == count {
            break;
        }
        let m = Mutation::ALL[rng.gen_range(0..Mutation::ALL.len())];
        if let Some(c) = m.apply(cert, rng.gen_range(0..1024)) {
            if c != *cert {
                out.push((m, c));
            }
        }
    }
    out
}
