//! Dense square matrices over ℤ (optionally reduced modulo an integer), over
//! `ℤ/mℤ` with word-sized `m`, and Gaussian elimination over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::primes::mul_mod;

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

fn reduce(x: BigInt, m: Option<&BigInt>) -> BigInt {
    match m {
        Some(m) => x.mod_floor(m),
        None => x,
    }
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    /// Companion matrix of `u_{n+d} = c_1 u_{n+d−1} + … + c_d u_n`, acting on
    /// states `(u_{n+d−1}, …, u_n)^T`.
    pub fn companion(c: &[BigInt]) -> Self {
        let d = c.len();
        let mut m = Self::zeros(d);
        for (j, cj) in c.iter().enumerate() {
            m.data[j] = cj.clone();
        }
        for i in 1..d {
            m.data[i * d + i - 1] = BigInt::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        IntMatrix { n: self.n, data: self.data.iter().map(|x| x.mod_floor(m)).collect() }
    }

    fn mul_opt(&self, o: &Self, m: Option<&BigInt>) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * &o.data[k * n + j];
                }
            }
        }
        if m.is_some() {
            for x in out.data.iter_mut() {
                *x = reduce(std::mem::take(x), m);
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_opt(o, None)
    }

    pub fn mul_mod(&self, o: &Self, m: &BigInt) -> Self {
        self.mul_opt(o, Some(m))
    }

    fn pow_opt(&self, mut e: u64, m: Option<&BigInt>) -> Self {
        let mut base = match m {
            Some(m) => self.reduce_mod(m),
            None => self.clone(),
        };
        let mut acc = Self::identity(self.n);
        if let Some(m) = m {
            acc = acc.reduce_mod(m);
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_opt(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_opt(&base, m);
            }
        }
        acc
    }

    pub fn pow(&self, e: u64) -> Self {
        self.pow_opt(e, None)
    }

    pub fn pow_mod(&self, e: u64, m: &BigInt) -> Self {
        self.pow_opt(e, Some(m))
    }

    /// `self^e mod m` for an arbitrary-precision exponent.
    pub fn pow_mod_big(&self, e: &BigInt, m: &BigInt) -> Self {
        let mut acc = Self::identity(self.n).reduce_mod(m);
        let base = self.reduce_mod(m);
        for bit in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(bit) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| &self.data[i * n + j] * &v[j]).sum())
            .collect()
    }

    pub fn mul_vec_mod(&self, v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        self.mul_vec(v).into_iter().map(|x| x.mod_floor(m)).collect()
    }

    pub fn sub(&self, o: &Self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_identity_mod(&self, m: &BigInt) -> bool {
        self.reduce_mod(m) == Self::identity(self.n).reduce_mod(m)
    }

    /// Entrywise exact division; `None` if some entry is not divisible.
    pub fn div_exact(&self, c: &BigInt) -> Option<Self> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            data.push(q);
        }
        Some(IntMatrix { n: self.n, data })
    }

    /// Characteristic polynomial `det(X·I − A)` in ascending order, by the
    /// division-free Berkowitz algorithm, optionally reduced modulo `m`.
    pub fn charpoly(&self, m: Option<&BigInt>) -> Vec<BigInt> {
        let n = self.n;
        if n == 0 {
            return vec![BigInt::one()];
        }
        let a = |i: usize, j: usize| self.data[i * n + j].clone();
        // descending coefficient vector
        let mut vect = vec![BigInt::one(), reduce(-a(0, 0), m)];
        for r in 1..n {
            let row: Vec<BigInt> = (0..r).map(|j| a(r, j)).collect();
            let mut col: Vec<BigInt> = (0..r).map(|i| a(i, r)).collect();
            let mut t = Vec::with_capacity(r + 2);
            t.push(BigInt::one());
            t.push(reduce(-a(r, r), m));
            for _ in 0..r {
                let rc: BigInt = row.iter().zip(&col).map(|(x, y)| x * y).sum();
                t.push(reduce(-rc, m));
                col = (0..r)
                    .map(|i| reduce((0..r).map(|j| a(i, j) * &col[j]).sum(), m))
                    .collect();
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for (j, v) in vect.iter().enumerate() {
                    if i >= j {
                        acc += &t[i - j] * v;
                    }
                }
                *slot = reduce(acc, m);
            }
            vect = next;
        }
        vect.reverse();
        vect
    }
}

/// Square matrix over `ℤ/mℤ` with `m < 2^63`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    n: usize,
    m: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(n: usize, m: u64) -> Self {
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            data[i * n + i] = 1 % m;
        }
        ModMatrix { n, m, data }
    }

    pub fn from_int(a: &IntMatrix, m: u64) -> Self {
        let mb = BigInt::from(m);
        let data = a
            .entries()
            .iter()
            .map(|x| u64::try_from(x.mod_floor(&mb)).unwrap())
            .collect();
        ModMatrix { n: a.size(), m, data }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let m = self.m;
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = mul_mod(a, o.data[k * n + j], m);
                    let s = data[i * n + j] + v;
                    data[i * n + j] = if s >= m { s - m } else { s };
                }
            }
        }
        ModMatrix { n, m, data }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n, self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        let m = self.m;
        (0..n)
            .map(|i| {
                let mut s = 0u64;
                for j in 0..n {
                    s = (s + mul_mod(self.data[i * n + j], v[j], m)) % m;
                }
                s
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.m)
    }

    /// `self^e` for a nonnegative arbitrary-precision exponent.
    pub fn pow_big(&self, e: &BigInt) -> Self {
        assert!(e.sign() != num_bigint::Sign::Minus, "negative exponent");
        let mut acc = Self::identity(self.n, self.m);
        for bit in (0..e.bits()).rev() {
            acc = acc.mul(&acc);
            if e.bit(bit) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Inverse of the companion matrix of `c` modulo `m`; needs `gcd(c_d, m) = 1`.
    pub fn companion_inverse(c: &[BigInt], m: u64) -> Option<Self> {
        let n = c.len();
        let mb = BigInt::from(m);
        let cd = u64::try_from(c[n - 1].mod_floor(&mb)).unwrap();
        let inv = super::primes::inv_mod(cd, m)?;
        let mut data = vec![0u64; n * n];
        // u_n = (u_{n+d} − c_1 u_{n+d−1} − … − c_{d−1} u_{n+1}) / c_d
        for i in 0..n - 1 {
            data[i * n + i + 1] = 1 % m;
        }
        let last = (n - 1) * n;
        data[last] = inv;
        for j in 1..n {
            let cj = u64::try_from(c[j - 1].mod_floor(&mb)).unwrap();
            data[last + j] = (m - mul_mod(cj, inv, m)) % m;
        }
        Some(ModMatrix { n, m, data })
    }

    /// `A^e` for the companion matrix `A` of `c` and any integer `e`.
    pub fn companion_power(c: &[BigInt], e: &BigInt, m: u64) -> Option<Self> {
        if e.sign() == num_bigint::Sign::Minus {
            Some(Self::companion_inverse(c, m)?.pow_big(&-e))
        } else {
            Some(Self::from_int(&IntMatrix::companion(c), m).pow_big(e))
        }
    }

    /// Entries as integers.
    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from_rows(
            self.data
                .chunks(self.n)
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }
}

/// Rank of a rational matrix given by rows.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    row_echelon(rows.to_vec()).1.len()
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn row_echelon(mut a: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Solve the square system `a·x = b` over ℚ; `None` if singular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, piv) = row_echelon(aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_inverse_mod() {
        let c: Vec<BigInt> = [3i64, -2, 5].iter().map(|&x| x.into()).collect();
        let m = 101;
        let a = ModMatrix::from_int(&IntMatrix::companion(&c), m);
        let inv = ModMatrix::companion_inverse(&c, m).unwrap();
        assert!(a.mul(&inv).is_identity());
        let e = BigInt::from(-7);
        let p = ModMatrix::companion_power(&c, &e, m).unwrap();
        assert!(p.mul(&a.pow(7)).is_identity());
        assert!(ModMatrix::companion_inverse(&c, 5).is_none());
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn companion_steps_fibonacci() {
        let a = IntMatrix::companion(&ints(&[1, 1]));
        let s = a.pow(10).mul_vec(&ints(&[1, 0]));
        // state (F_11, F_10)
        assert_eq!(s, ints(&[89, 55]));
    }

    #[test]
    fn charpoly_of_companion_matches_recurrence() {
        let a = IntMatrix::companion(&ints(&[9, -10, 522, -4745, 4225]));
        assert_eq!(a.charpoly(None), ints(&[-4225, 4745, -522, 10, -9, 1]));
        let b = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        // det(XI - B) = X^3 - 9X^2 + 24X - 18
        assert_eq!(b.charpoly(None), ints(&[-18, 24, -9, 1]));
        assert_eq!(b.charpoly(Some(&BigInt::from(7))), ints(&[3, 3, 5, 1]));
    }

    #[test]
    fn modular_power_agrees() {
        let a = IntMatrix::companion(&ints(&[3, -7, 2]));
        let mm = BigInt::from(1009);
        let direct = a.pow(37).reduce_mod(&mm);
        assert_eq!(a.pow_mod(37, &mm), direct);
        assert_eq!(a.pow_mod_big(&BigInt::from(37), &mm), direct);
        assert_eq!(ModMatrix::from_int(&a, 1009).pow(37).to_int(), direct);
    }

    #[test]
    fn rational_solve() {
        let q = |x: i64| BigRational::from_integer(x.into());
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve_rational(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert!(solve_rational(&[vec![q(1), q(2)], vec![q(2), q(4)]], &[q(1), q(1)]).is_none());
    }
}
