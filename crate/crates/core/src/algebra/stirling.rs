use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Signed Stirling numbers of the first kind `s(k, 0..=k)`:
/// `n(n−1)⋯(n−k+1) = Σ_j s(k, j) n^j`.
pub fn falling_factorial_coeffs(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 0..k {
        // multiply by (n - m)
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(m);
        }
        row = next;
    }
    row
}

/// Rows of `s(k, 0..=cols)` reduced modulo `modulus`, generated incrementally.
#[derive(Clone, Debug)]
pub struct StirlingRows {
    k: usize,
    row: Vec<BigInt>,
    modulus: BigInt,
}

impl StirlingRows {
    pub fn new(cols: usize, modulus: BigInt) -> Self {
        let mut row = vec![BigInt::zero(); cols + 1];
        row[0] = BigInt::one();
        StirlingRows { k: 0, row, modulus }
    }

    /// Current row index `k`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// `s(k, j) mod modulus` for the current `k`.
    pub fn get(&self, j: usize) -> &BigInt {
        &self.row[j]
    }

    pub fn advance(&mut self) {
        let m = BigInt::from(self.k);
        for j in (0..self.row.len()).rev() {
            let prev = if j > 0 { self.row[j - 1].clone() } else { BigInt::zero() };
            let v = prev - &m * &self.row[j];
            self.row[j] = ((v % &self.modulus) + &self.modulus) % &self.modulus;
        }
        self.k += 1;
    }
}
