use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// `⌊x + 1/2⌋`.
fn round(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * &two))
}

/// Gram–Schmidt data: squared norms `B_i` and coefficients `μ_ij`.
fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let bi: Vec<BigRational> = b[i].iter().map(q).collect();
        let mut v = bi.clone();
        for j in 0..i {
            if norms[j] == BigRational::zero() {
                continue;
            }
            let m = dot(&bi, &star[j]) / &norms[j];
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= &m * s;
            }
            mu[i][j] = m;
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (norms, mu)
}

/// LLL reduction (δ = 3/4) of linearly independent integer rows. Returns the
/// reduced basis and its Gram–Schmidt squared norms.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<BigRational>) {
    let n = b.len();
    if n == 0 {
        return (b, Vec::new());
    }
    let delta = BigRational::new(3.into(), 4.into());
    let (mut norms, mut mu) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let r = round(&mu[k][j]);
            if r.is_zero() {
                continue;
            }
            let bj = b[j].clone();
            for (x, y) in b[k].iter_mut().zip(&bj) {
                *x -= &r * y;
            }
            let rq = q(&r);
            for l in 0..j {
                let t = &rq * &mu[j][l];
                mu[k][l] -= t;
            }
            mu[k][j] -= &rq;
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            (norms, mu) = gram_schmidt(&b);
            k = (k - 1).max(1);
        }
    }
    (b, norms)
}
