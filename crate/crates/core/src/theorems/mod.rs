//! Constructive side of the discrete and continuous convolution theorems.
//!
//! For `0 < a < 1` and `v₀ = (1, a, …, a^(N−1))`, the convolution `x ∗ v₀`
//! is majorized by `(v₀, 0̄)` whenever `x` lies in the cone spanned by the
//! elementary differences and the result is nonnegative. The continuous
//! statement replaces `v₀` by `e^(−z)`, and is checked here through the
//! discretization that the proof uses.

mod cone;
mod montecarlo;
mod theorem1;
mod theorem2;

use serde::Serialize;
use thiserror::Error;

pub use cone::{
    all_vertices, cone_vertex, cone_vertex_generic, v0_generic, vk_uk_generic, ConeVertex, ConeVertexSpec,
    GenericVertex, Ring, SliceTransfer, VertexIndex, MAX_VERTEX_N,
};
pub use montecarlo::{draw_instance, run_monte_carlo, MonteCarloConfig, MonteCarloSummary, Sampling, DYADIC_DENOMINATOR};
pub use theorem1::{
    build_v0, build_vk_uk, convolution_g, convolution_g_toeplitz, g_from_lambdas, lemma1_decompose,
    lemma1_vector, verify_theorem1, Lemma1Decomposition, Theorem1Instance, Theorem1Outcome,
};
pub use theorem2::{
    build_discretization, find_suffix_threshold, verify_theorem2_convergence, ConvergenceReport, LevelReport,
    LevelStatus, Theorem2Discretization, WitnessSummary,
};

#[derive(Debug, Error, Clone, PartialEq, Serialize)]
pub enum TheoremError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    /// `G ≥ 0` but `(v₀, 0̄) ⊁ G`. Carries the full instance as rational
    /// strings so it can be replayed.
    #[error("theorem violated: n = {n}, a = {a}, lambdas = {lambdas:?}, G = {g:?}, min margin {min_margin}")]
    TheoremViolation { n: usize, a: String, lambdas: Vec<String>, g: Vec<String>, min_margin: String },
    #[error("vertex construction failed at step {step}: moving {amount} from {from} to {to} with gap {gap}")]
    ConstructionFailure { step: usize, from: usize, to: usize, amount: String, gap: String },
    #[error("suffix sum {value} at k = {k} is negative")]
    Lemma1Failure { k: usize, value: String },
    #[error("entry conditions fail: total = {total}, tail nonnegative = {tail_nonnegative}")]
    EntryConditionsFailed { total: String, tail_nonnegative: bool },
    #[error("suffix condition fails at Δz = {delta_z} (N = {n}): suffix {k} is {value:e}; refine the grid")]
    SuffixConditionFailed { delta_z: f64, n: usize, k: usize, value: f64 },
    #[error("convergence check failed: {0}")]
    ConvergenceViolation(String),
}
