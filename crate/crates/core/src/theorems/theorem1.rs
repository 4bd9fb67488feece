use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cone::{v0_generic, vk_uk_generic};
use super::TheoremError;
use crate::majorize::{majorizes_exact, ExactVerdict};
use crate::report::{rational_strings, ser_rational, ser_rationals};

/// `N`, the ratio `a` and the cone coordinates `λ₁ … λ_N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Instance {
    n: usize,
    #[serde(serialize_with = "ser_rational")]
    a: BigRational,
    #[serde(serialize_with = "ser_rationals")]
    lambdas: Vec<BigRational>,
}

impl Theorem1Instance {
    pub fn new(n: usize, a: BigRational, lambdas: Vec<BigRational>) -> Result<Self, TheoremError> {
        if n == 0 {
            return Err(TheoremError::InvalidInstance("N must be positive".into()));
        }
        if !(a.is_positive() && a < BigRational::one()) {
            return Err(TheoremError::InvalidInstance(format!("a = {a} is not in (0, 1)")));
        }
        if lambdas.len() != n {
            return Err(TheoremError::InvalidInstance(format!(
                "expected {n} lambdas, got {}",
                lambdas.len()
            )));
        }
        if let Some((k, l)) = lambdas.iter().enumerate().find(|(_, l)| l.is_negative()) {
            return Err(TheoremError::InvalidInstance(format!("lambda_{} = {l} is negative", k + 1)));
        }
        Ok(Theorem1Instance { n, a, lambdas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn lambdas(&self) -> &[BigRational] {
        &self.lambdas
    }

    fn violation(&self, g: &[BigRational], verdict: &ExactVerdict) -> TheoremError {
        TheoremError::TheoremViolation {
            n: self.n,
            a: self.a.to_string(),
            lambdas: rational_strings(&self.lambdas),
            g: rational_strings(g),
            min_margin: verdict.min_margin.to_string(),
        }
    }
}

/// `(1, a, …, a^(N−1))`.
pub fn build_v0(n: usize, a: &BigRational) -> Vec<BigRational> {
    let mut v = v0_generic(n, a);
    v.truncate(n);
    v
}

/// The 2N-vector `(v_k, u_k)`, `1 ≤ k ≤ N`.
pub fn build_vk_uk(n: usize, a: &BigRational, k: usize) -> Vec<BigRational> {
    vk_uk_generic(n, a, k)
}

/// `(v₀, 0̄) + Σ λ_k (v_k, u_k)` for arbitrary real `λ`, including points
/// outside the cone.
pub fn g_from_lambdas(n: usize, a: &BigRational, lambdas: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(lambdas.len(), n);
    let mut g = v0_generic(n, a);
    for (k, l) in lambdas.iter().enumerate() {
        if l.is_zero() {
            continue;
        }
        for (gi, vi) in g.iter_mut().zip(build_vk_uk(n, a, k + 1)) {
            *gi += l * vi;
        }
    }
    g
}

pub fn convolution_g(inst: &Theorem1Instance) -> Vec<BigRational> {
    g_from_lambdas(inst.n, &inst.a, &inst.lambdas)
}

/// The `N + 1` vector `x = (1, 0, …) + Σ λ_k (…, −1 at k, +1 at k + 1, …)`,
/// whose convolution with `v₀` is `G`.
pub fn lemma1_vector(lambdas: &[BigRational]) -> Vec<BigRational> {
    let n = lambdas.len();
    let mut x = vec![BigRational::zero(); n + 1];
    x[0] = BigRational::one();
    for (k, l) in lambdas.iter().enumerate() {
        x[k] -= l;
        x[k + 1] += l;
    }
    x
}

/// `x ∗ v₀` written as a Toeplitz product.
pub fn convolution_g_toeplitz(inst: &Theorem1Instance) -> Vec<BigRational> {
    let x = lemma1_vector(&inst.lambdas);
    let v0 = build_v0(inst.n, &inst.a);
    let mut g = vec![BigRational::zero(); 2 * inst.n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, vj) in v0.iter().enumerate() {
            g[i + j] += xi * vj;
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem1Outcome {
    /// `G ≥ 0` and the majorization holds exactly.
    Holds { g: Vec<BigRational>, verdict: ExactVerdict },
    /// The guard fails: `G` has a negative entry.
    NotApplicable { g: Vec<BigRational>, index: usize, value: BigRational },
}

impl Theorem1Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Theorem1Outcome::Holds { .. })
    }

    pub fn g(&self) -> &[BigRational] {
        match self {
            Theorem1Outcome::Holds { g, .. } | Theorem1Outcome::NotApplicable { g, .. } => g,
        }
    }
}

/// Exact check of `(v₀, 0̄) ≻ G`. A failure with `G ≥ 0` is a
/// [`TheoremError::TheoremViolation`], as is any disagreement between the
/// two ways of computing `G`.
pub fn verify_theorem1(inst: &Theorem1Instance) -> Result<Theorem1Outcome, TheoremError> {
    let g = convolution_g(inst);
    let toeplitz = convolution_g_toeplitz(inst);
    if g != toeplitz {
        let verdict = majorizes_exact(&v0_generic(inst.n, &inst.a), &g);
        return Err(inst.violation(&g, &verdict));
    }
    if let Some((index, value)) = g.iter().enumerate().find(|(_, v)| v.is_negative()) {
        let value = value.clone();
        return Ok(Theorem1Outcome::NotApplicable { g, index, value });
    }
    let verdict = majorizes_exact(&v0_generic(inst.n, &inst.a), &g);
    if !verdict.holds {
        return Err(inst.violation(&g, &verdict));
    }
    Ok(Theorem1Outcome::Holds { g, verdict })
}

/// Suffix sums `λ_k = Σ_{i ≥ k} x_i`; `lambdas[0]` is the total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Decomposition {
    #[serde(serialize_with = "ser_rationals")]
    pub lambdas: Vec<BigRational>,
}

impl Lemma1Decomposition {
    pub fn total(&self) -> &BigRational {
        &self.lambdas[0]
    }

    /// `λ₀ e₀ + Σ_{k ≥ 1} λ_k (e_k − e_(k−1))`.
    pub fn reconstruct(&self) -> Vec<BigRational> {
        let n = self.lambdas.len();
        let mut x = vec![BigRational::zero(); n];
        x[0] = self.lambdas[0].clone();
        for k in 1..n {
            x[k - 1] -= &self.lambdas[k];
            x[k] += &self.lambdas[k];
        }
        x
    }
}

/// Writes `x` as a nonnegative combination of the first unit vector and the
/// elementary differences, or reports the first negative suffix sum.
pub fn lemma1_decompose(x: &[BigRational]) -> Result<Lemma1Decomposition, TheoremError> {
    let mut lambdas = vec![BigRational::zero(); x.len()];
    let mut acc = BigRational::zero();
    for k in (0..x.len()).rev() {
        acc += &x[k];
        lambdas[k] = acc.clone();
    }
    if let Some((k, v)) = lambdas.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(TheoremError::Lemma1Failure { k, value: v.to_string() });
    }
    Ok(Lemma1Decomposition { lambdas })
}
