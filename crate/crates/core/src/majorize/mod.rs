//! Majorization verdicts for vectors and for radial profiles.
//!
//! `x ≻ y` when the partial sums of the non-increasing rearrangement of `x`
//! dominate those of `y` and the totals agree. The continuous verdict reduces
//! to the discrete one on a uniform grid in `z`, since Lebesgue measure in `z`
//! is the natural measure after the substitution `z = r²`.

mod continuous;
mod functional;
mod matrix;
mod robin_hood;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::to_f64;

pub use continuous::{
    decreasing_rearrangement, majorizes_continuous, Density, GridConfig, RearrangedProfile,
    SampledFunction,
};
pub use functional::{convex_functional, wigner_entropy, wigner_entropy_parts, ConvexFn, EntropyParts};
pub use matrix::{circulant, convolve, is_doubly_stochastic, SquareMatrix};
pub use robin_hood::{robin_hood_decompose, Transfer, TransferSequence};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MajorizeError {
    #[error("x does not majorize y (min prefix margin {min_margin:e}, totals {total_x} vs {total_y})")]
    NotMajorized { min_margin: f64, total_x: f64, total_y: f64 },
    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },
    #[error("tail mass bound {bound:e} at z_max = {z_max} exceeds {limit:e}")]
    TailTooHeavy { z_max: f64, bound: f64, limit: f64 },
    #[error("verdict changed between the last two refinement rounds ({cells_prev} → {cells_last} cells)")]
    Unstable { cells_prev: usize, cells_last: usize },
    #[error("invalid grid configuration: {0}")]
    InvalidGrid(String),
    #[error("x·ln x needs a nonnegative profile")]
    NegativeInput,
    #[error("transfer construction did not converge (residual {0:e})")]
    NoConvergence(f64),
}

/// Outcome of an `x ≻ y` check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    pub total_x: f64,
    pub total_y: f64,
    /// Minimum over prefixes of `Σ_{i<k} x↓_i − Σ_{i<k} y↓_i`.
    pub min_margin: f64,
    /// Prefix length where the minimum is attained.
    pub argmin_prefix: usize,
    /// Measure of that prefix: equal to `argmin_prefix` for vectors, the
    /// rearrangement parameter `t` on a grid.
    pub argmin_t: f64,
    pub tolerance: f64,
}

impl MajorizationVerdict {
    fn decide(total_x: f64, total_y: f64, min_margin: f64, argmin: usize, t: f64, tol: f64) -> Self {
        let holds = min_margin >= -tol && (total_x - total_y).abs() <= tol;
        MajorizationVerdict {
            holds,
            total_x,
            total_y,
            min_margin,
            argmin_prefix: argmin,
            argmin_t: t,
            tolerance: tol,
        }
    }
}

/// Indices of `v` ordered by non-increasing value; ties keep input order.
pub(crate) fn descending_order(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]));
    idx
}

fn padded(x: &[f64], len: usize) -> Vec<f64> {
    let mut v = x.to_vec();
    v.resize(len, 0.0);
    v
}

/// Prefix-sum comparison of two sorted, equal-length sequences.
/// Returns `(min_margin, argmin_prefix, total_x, total_y)`.
pub(crate) fn prefix_margins(xs: &[f64], ys: &[f64]) -> (f64, usize, f64, f64) {
    let (mut sx, mut sy) = (0.0, 0.0);
    let (mut min, mut arg) = (0.0, 0);
    for (k, (a, b)) in xs.iter().zip(ys).enumerate() {
        sx += a;
        sy += b;
        let m = sx - sy;
        if k == 0 || m < min {
            min = m;
            arg = k + 1;
        }
    }
    (min, arg, sx, sy)
}

/// `x ≻ y` on real vectors; the shorter one is padded with zeros.
pub fn majorizes_discrete(x: &[f64], y: &[f64], tol: f64) -> MajorizationVerdict {
    let n = x.len().max(y.len());
    let (x, y) = (padded(x, n), padded(y, n));
    let xs: Vec<f64> = descending_order(&x).into_iter().map(|i| x[i]).collect();
    let ys: Vec<f64> = descending_order(&y).into_iter().map(|i| y[i]).collect();
    let (min, arg, tx, ty) = prefix_margins(&xs, &ys);
    MajorizationVerdict::decide(tx, ty, min, arg, arg as f64, tol)
}

/// Exact `x ≻ y` on rational vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactVerdict {
    pub holds: bool,
    pub min_margin: BigRational,
    pub argmin_prefix: usize,
    pub total_x: BigRational,
    pub total_y: BigRational,
}

impl ExactVerdict {
    pub fn to_verdict(&self) -> MajorizationVerdict {
        MajorizationVerdict {
            holds: self.holds,
            total_x: to_f64(&self.total_x),
            total_y: to_f64(&self.total_y),
            min_margin: to_f64(&self.min_margin),
            argmin_prefix: self.argmin_prefix,
            argmin_t: self.argmin_prefix as f64,
            tolerance: 0.0,
        }
    }
}

pub fn majorizes_exact(x: &[BigRational], y: &[BigRational]) -> ExactVerdict {
    let n = x.len().max(y.len());
    let sorted = |v: &[BigRational]| {
        let mut s = v.to_vec();
        s.resize(n, BigRational::zero());
        s.sort_by(|a, b| b.cmp(a));
        s
    };
    let (xs, ys) = (sorted(x), sorted(y));
    let (mut sx, mut sy) = (BigRational::zero(), BigRational::zero());
    let mut min = BigRational::zero();
    let mut arg = 0;
    for (k, (a, b)) in xs.iter().zip(&ys).enumerate() {
        sx += a;
        sy += b;
        let m = &sx - &sy;
        if k == 0 || m < min {
            min = m;
            arg = k + 1;
        }
    }
    let holds = !min.is_negative() && sx == sy;
    ExactVerdict { holds, min_margin: min, argmin_prefix: arg, total_x: sx, total_y: sy }
}
