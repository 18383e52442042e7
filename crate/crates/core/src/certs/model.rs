use num_bigint::BigInt;
use num_rational::BigRational;

/// A certificate that the listed zeros are all the zeros of a recurrence.
///
/// The entries are arithmetic progressions `{n : n ≡ residue (mod modulus)}`
/// partitioning ℤ; each carries a witness that the sequence has no zero on it
/// except possibly one certified center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub input: InputEcho,
    pub working: WorkingSpec,
    pub zeros: Vec<BigInt>,
    pub entries: Vec<ProgressionEntry>,
}

/// The recurrence as given by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputEcho {
    pub coefficients: Vec<BigRational>,
    pub initial: Vec<BigRational>,
}

/// Integer recurrence with `working_n = ell^n · scale · input_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkingSpec {
    pub coefficients: Vec<BigInt>,
    pub initial: Vec<BigInt>,
    pub ell: BigInt,
    pub scale: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressionEntry {
    pub modulus: BigInt,
    pub residue: BigInt,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Modulus(ModulusWitness),
    Valuation(ValuationWitness),
}

/// The sequence along the progression is nonzero mod `m`, with period `period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusWitness {
    pub m: u64,
    pub period: u64,
}

/// The progression `center + stride·L·p^e·ℤ` has its only zero at `center`.
///
/// With `f(x) = u(center + stride·L·x)`, the series coefficient `a_{j0}` has
/// valuation `nu` (certified by the partial sum up to `terms_used`), the
/// lower coefficients vanish (`a_0 = u_center = 0`, the others by
/// `zero_proofs`), and `e` makes `a_{j0}` dominate after `x = p^e·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationWitness {
    pub center: BigInt,
    pub stride: BigInt,
    pub p: u64,
    pub l: u64,
    pub e: u32,
    pub nu: u64,
    pub j0: usize,
    pub terms_used: u64,
    pub zero_proofs: Vec<ZeroProofData>,
}

/// Replayable proof that `a_j` vanishes, over `ℚ[θ]/(modulus)`. Polynomials
/// are ascending coefficient lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroProofData {
    pub j: usize,
    pub modulus: Vec<BigRational>,
    pub roots: Vec<Vec<BigRational>>,
    pub alphas: Vec<Vec<BigRational>>,
    pub independent: Vec<usize>,
    pub relations: Vec<RelationData>,
}

/// `λ_index^{torsion·m} = ∏_k λ_{independent[k]}^{torsion·n_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationData {
    pub index: usize,
    pub m: BigInt,
    pub n: Vec<BigInt>,
    pub torsion: u64,
}

impl Certificate {
    pub fn valuation_entries(&self) -> impl Iterator<Item = (usize, &ValuationWitness)> {
        self.entries.iter().enumerate().filter_map(|(i, e)| match &e.witness {
            Witness::Valuation(v) => Some((i, v)),
            Witness::Modulus(_) => None,
        })
    }
}
