use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::TheoremError;
use crate::majorize::{majorizes_exact, ExactVerdict, SquareMatrix, Transfer, TransferSequence};
use crate::poly::to_f64;
use crate::report::{rational_strings, ser_rational};

/// Exhaustive enumeration is capped here (`2^N` vertices).
pub const MAX_VERTEX_N: usize = 12;

/// Commutative ring the vertex construction runs over: exact rationals for
/// numbers, polynomials for a symbolic `a`.
pub trait Ring: Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}

impl<T> Ring for T where T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> {}

fn powers<R: Ring>(a: &R, count: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(count);
    let mut p = R::one();
    for _ in 0..count {
        out.push(p.clone());
        p = p * a.clone();
    }
    out
}

/// `(v₀, 0̄)`: `(1, a, …, a^(N−1), 0, …, 0)` of length `2N`.
pub fn v0_generic<R: Ring>(n: usize, a: &R) -> Vec<R> {
    let mut v = powers(a, n);
    v.resize(2 * n, R::zero());
    v
}

/// `(v_k, u_k)` for `1 ≤ k ≤ N`: zero except positions `k … k + N`
/// (1-based), which hold `(−1, 1 − a, a − a², …, a^(N−2) − a^(N−1), a^(N−1))`.
pub fn vk_uk_generic<R: Ring>(n: usize, a: &R, k: usize) -> Vec<R> {
    assert!((1..=n).contains(&k), "k = {k} outside 1..={n}");
    let p = powers(a, n);
    let mut v = vec![R::zero(); 2 * n];
    let start = k - 1;
    v[start] = R::zero() - R::one();
    for t in 1..n {
        v[start + t] = p[t - 1].clone() - p[t].clone();
    }
    v[start + n] = p[n - 1].clone();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexIndex {
    /// The coordinate is driven to zero.
    Zero,
    /// The coordinate is left as is.
    Lambda,
}

/// Index word `i₁ … i_N` naming one vertex of the cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConeVertexSpec {
    pub indices: Vec<VertexIndex>,
}

impl ConeVertexSpec {
    pub fn new(indices: Vec<VertexIndex>) -> Self {
        assert!(!indices.is_empty(), "a vertex needs at least one index");
        ConeVertexSpec { indices }
    }

    /// Bit `k` of `mask` set means `i_(k+1) = 0`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self::new(
            (0..n)
                .map(|k| if mask >> k & 1 == 1 { VertexIndex::Zero } else { VertexIndex::Lambda })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.indices.len()
    }
}

impl FromStr for ConeVertexSpec {
    type Err = String;

    /// Accepts words like `"λ0λ"`, `"l0l"` or `"L,0,L"`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut indices = Vec::new();
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => indices.push(VertexIndex::Zero),
                'λ' | 'l' | 'L' => indices.push(VertexIndex::Lambda),
                ',' | ' ' => {}
                _ => return Err(format!("unexpected {ch:?} at position {pos}")),
            }
        }
        if indices.is_empty() {
            return Err("empty vertex word".into());
        }
        Ok(ConeVertexSpec { indices })
    }
}

impl fmt::Display for ConeVertexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.indices {
            f.write_str(match i {
                VertexIndex::Zero => "0",
                VertexIndex::Lambda => "λ",
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericVertex<R> {
    pub vector: Vec<R>,
    pub lambdas: Vec<R>,
}

/// `v₀ + v_{i₁…i_N}`: for each `j` with `i_j = 0`, in increasing order, add
/// the multiple of `(v_j, u_j)` that zeroes coordinate `j`. That multiple is
/// the coordinate's current value, which becomes `λ_j`.
pub fn cone_vertex_generic<R: Ring>(spec: &ConeVertexSpec, a: &R) -> GenericVertex<R> {
    let n = spec.n();
    let mut vector = v0_generic(n, a);
    let mut lambdas = vec![R::zero(); n];
    for (j, idx) in spec.indices.iter().enumerate() {
        if *idx == VertexIndex::Lambda {
            continue;
        }
        let c = vector[j].clone();
        for (g, v) in vector.iter_mut().zip(vk_uk_generic(n, a, j + 1)) {
            *g = g.clone() + c.clone() * v;
        }
        lambdas[j] = c;
    }
    GenericVertex { vector, lambdas }
}

/// One slice of a zeroing step, moved exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceTransfer {
    /// 1-based index of the coordinate being zeroed.
    pub step: usize,
    pub from: usize,
    pub to: usize,
    #[serde(serialize_with = "ser_rational")]
    pub amount: BigRational,
    /// `x_from − x_to` just before the slice.
    #[serde(serialize_with = "ser_rational")]
    pub gap: BigRational,
}

#[derive(Clone, Debug)]
pub struct ConeVertex {
    pub spec: ConeVertexSpec,
    pub vector: Vec<BigRational>,
    pub lambdas: Vec<BigRational>,
    pub slices: Vec<SliceTransfer>,
    /// Floating-point witness: `witness · (v₀, 0̄) = vector`.
    pub sequence: TransferSequence,
    pub verdict: ExactVerdict,
}

/// Builds the vertex and slices every zeroing step into Robin Hood
/// transfers: slice `t` moves `c (a^(t−1) − a^t)` from `j` to `j + t`, and
/// the last one moves `c a^(N−1)` to `j + N`.
pub fn cone_vertex(spec: &ConeVertexSpec, a: &BigRational) -> Result<ConeVertex, TheoremError> {
    let n = spec.n();
    let generic = cone_vertex_generic(spec, a);
    let p = powers(a, n);
    let v0 = v0_generic(n, a);
    let mut state = v0.clone();
    let mut slices = Vec::new();
    let mut transfers = Vec::new();
    let mut witness = SquareMatrix::identity(2 * n);
    for (j, idx) in spec.indices.iter().enumerate() {
        if *idx == VertexIndex::Lambda || state[j].is_zero() {
            continue;
        }
        let c = state[j].clone();
        for t in 1..=n {
            let to = j + t;
            let amount = if t < n { &c * (&p[t - 1] - &p[t]) } else { &c * &p[n - 1] };
            let gap = &state[j] - &state[to];
            if amount.is_negative() || amount > gap {
                return Err(TheoremError::ConstructionFailure {
                    step: j + 1,
                    from: j,
                    to,
                    amount: amount.to_string(),
                    gap: gap.to_string(),
                });
            }
            if amount.is_zero() {
                continue;
            }
            let before = (to_f64(&state[j]), to_f64(&state[to]));
            witness.apply_t_transform(j, to, to_f64(&(BigRational::one() - &amount / &gap)));
            state[j] -= &amount;
            state[to] += &amount;
            transfers.push(Transfer { from: j, to, amount: to_f64(&amount), before });
            slices.push(SliceTransfer { step: j + 1, from: j, to, amount, gap });
        }
    }
    debug_assert_eq!(state, generic.vector);
    let verdict = majorizes_exact(&v0, &state);
    if !verdict.holds {
        return Err(TheoremError::TheoremViolation {
            n,
            a: a.to_string(),
            lambdas: rational_strings(&generic.lambdas),
            g: rational_strings(&state),
            min_margin: verdict.min_margin.to_string(),
        });
    }
    let sequence = TransferSequence { transfers, permutation: (0..2 * n).collect(), witness };
    Ok(ConeVertex { spec: spec.clone(), vector: state, lambdas: generic.lambdas, slices, sequence, verdict })
}

/// All `2^N` vertices in mask order (bit `k` set means `i_(k+1) = 0`).
pub fn all_vertices(n: usize, a: &BigRational) -> Result<Vec<ConeVertex>, TheoremError> {
    if n == 0 || n > MAX_VERTEX_N {
        return Err(TheoremError::InvalidInstance(format!("vertex enumeration needs 1 <= N <= {MAX_VERTEX_N}")));
    }
    if !(a.is_positive() && a < &BigRational::one()) {
        return Err(TheoremError::InvalidInstance(format!("a = {a} is not in (0, 1)")));
    }
    (0..1u64 << n).into_par_iter().map(|mask| cone_vertex(&ConeVertexSpec::from_mask(n, mask), a)).collect()
}
