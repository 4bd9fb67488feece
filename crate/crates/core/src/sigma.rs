//! Photon-number distributions `σ(m, n)` at one output port of a balanced
//! beamsplitter fed with `|m⟩` and `|n⟩`, and the equal-weight mixture
//! identity they satisfy.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::fockspace::FockMixture;

pub const DEFAULT_BOUND: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SigmaError {
    #[error("m + n = {total} exceeds the configured bound {bound}")]
    BoundExceeded { total: usize, bound: usize },
    #[error("equal mixture of σ(m, {total}-m) differs from the uniform mixture at |{index}⟩: got {got}")]
    IdentityViolation { total: usize, index: usize, got: BigRational },
}

/// Exact output weights `a_z`, `z = 0 … m+n`, of `σ(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCoefficients {
    pub m: usize,
    pub n: usize,
    pub a: Vec<BigRational>,
}

impl SigmaCoefficients {
    pub fn total(&self) -> BigRational {
        self.a.iter().sum()
    }
}

fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub fn sigma_coefficients(m: usize, n: usize) -> Result<SigmaCoefficients, SigmaError> {
    sigma_coefficients_bounded(m, n, DEFAULT_BOUND)
}

/// Evaluates the double sum with `M = m + n` held fixed and summation range
/// `max(0, z+m−M) ..= min(z, m)`.
pub fn sigma_coefficients_bounded(
    m: usize,
    n: usize,
    bound: usize,
) -> Result<SigmaCoefficients, SigmaError> {
    let total = m + n;
    if total > bound {
        return Err(SigmaError::BoundExceeded { total, bound });
    }
    let prefactor = BigRational::new(
        BigInt::one(),
        factorial(m) * factorial(n) * (BigInt::one() << total),
    );
    let a = (0..=total)
        .map(|z| {
            let lo = (z + m).saturating_sub(total);
            let hi = z.min(m);
            double_sum(m, n, z, lo, hi) * factorial(z) * factorial(total - z)
        })
        .map(|s| BigRational::from_integer(s) * &prefactor)
        .collect();
    Ok(SigmaCoefficients { m, n, a })
}

/// `Σ_i Σ_j (−1)^(i+j) C(m,i) C(n,z−i) C(m,j) C(n,z−j)` over `i, j ∈ [lo, hi]`.
fn double_sum(m: usize, n: usize, z: usize, lo: usize, hi: usize) -> BigInt {
    let mut sum = BigInt::zero();
    if lo > hi {
        return sum;
    }
    for i in lo..=hi {
        let ti = binomial(m, i) * binomial(n, z - i);
        for j in lo..=hi {
            let t = &ti * binomial(m, j) * binomial(n, z - j);
            if (i + j) % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
        }
    }
    sum
}

/// Same coefficients with the summation range written as
/// `max(0, z−n) ..= min(z, m)`.
pub fn sigma_coefficients_alt_bounds(m: usize, n: usize) -> Vec<BigRational> {
    let total = m + n;
    let prefactor = BigRational::new(
        BigInt::one(),
        factorial(m) * factorial(n) * (BigInt::one() << total),
    );
    (0..=total)
        .map(|z| {
            let s = double_sum(m, n, z, z.saturating_sub(n), z.min(m));
            BigRational::from_integer(s * factorial(z) * factorial(total - z)) * &prefactor
        })
        .collect()
}

/// The `(M+1) × (M+1)` table `a[m][z]` of `σ(m, M−m)`, computed in parallel.
pub fn sigma_table(total: usize) -> Result<Vec<Vec<BigRational>>, SigmaError> {
    (0..=total)
        .into_par_iter()
        .map(|m| sigma_coefficients_bounded(m, total - m, total.max(DEFAULT_BOUND)).map(|s| s.a))
        .collect()
}

/// `a_{m,z} = a_{z,m}` for every `m, z ≤ M`.
pub fn symmetry_check(total: usize) -> bool {
    match sigma_table(total) {
        Ok(table) => (0..=total).all(|m| (0..=total).all(|z| table[m][z] == table[z][m])),
        Err(_) => false,
    }
}

/// `(1/(M+1)) Σ_m σ(m, M−m)`, checked exactly against the uniform mixture of
/// `|0⟩ … |M⟩`.
pub fn equal_mixture(total: usize) -> Result<FockMixture, SigmaError> {
    let table = sigma_table(total)?;
    let scale = BigRational::new(BigInt::one(), BigInt::from(total + 1));
    for z in 0..=total {
        let column: BigRational = table.iter().map(|row| &row[z]).sum();
        let weight = column * &scale;
        if weight != scale {
            return Err(SigmaError::IdentityViolation { total, index: z, got: weight });
        }
    }
    Ok(FockMixture::uniform(total + 1))
}
