use serde::Serialize;

use super::matrix::SquareMatrix;
use super::{descending_order, majorizes_discrete, MajorizeError};

/// Moves `amount` from coordinate `from` to coordinate `to`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    pub amount: f64,
    /// Values of the two coordinates just before the transfer.
    pub before: (f64, f64),
}

/// Robin Hood transfers turning `x` into `y`.
///
/// `x` is first rearranged so that its order statistics sit on the
/// coordinates of the matching order statistics of `y` (`permutation[i]` is
/// the destination of `x[i]`); the transfers then act on that rearranged
/// vector. `witness` is the product of the T-transforms and the permutation,
/// so `witness · x = y`.
#[derive(Clone, Debug, Serialize)]
pub struct TransferSequence {
    pub transfers: Vec<Transfer>,
    pub permutation: Vec<usize>,
    pub witness: SquareMatrix,
}

const PRECONDITION_TOL: f64 = 1e-12;

/// Classical construction: repeatedly take the last coordinate where the
/// working vector exceeds `y` and the first later one where it falls short,
/// and move the smaller of the two gaps.
pub fn robin_hood_decompose(x: &[f64], y: &[f64]) -> Result<TransferSequence, MajorizeError> {
    let n = x.len().max(y.len());
    let mut xv = x.to_vec();
    let mut yv = y.to_vec();
    xv.resize(n, 0.0);
    yv.resize(n, 0.0);
    for (i, &v) in xv.iter().chain(&yv).enumerate() {
        if v < -PRECONDITION_TOL {
            return Err(MajorizeError::NegativeEntry { index: i % n.max(1), value: v });
        }
    }
    let scale = xv.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let verdict = majorizes_discrete(&xv, &yv, PRECONDITION_TOL * scale);
    if !verdict.holds {
        return Err(MajorizeError::NotMajorized {
            min_margin: verdict.min_margin,
            total_x: verdict.total_x,
            total_y: verdict.total_y,
        });
    }

    let ox = descending_order(&xv);
    let oy = descending_order(&yv);
    let mut permutation = vec![0; n];
    let mut witness = SquareMatrix::zeros(n);
    // w lives in y's coordinates; position s of the sorted order is oy[s]
    let mut w = vec![0.0; n];
    for s in 0..n {
        permutation[ox[s]] = oy[s];
        witness.set(oy[s], ox[s], 1.0);
        w[oy[s]] = xv[ox[s]];
    }
    let target: Vec<f64> = oy.iter().map(|&i| yv[i]).collect();
    let eps = 1e-15 * scale;

    let mut transfers = Vec::new();
    let max_steps = 4 * n + 4;
    loop {
        let ws: Vec<f64> = oy.iter().map(|&i| w[i]).collect();
        let Some(j) = (0..n).rev().find(|&s| ws[s] > target[s] + eps) else {
            break;
        };
        let Some(k) = (j + 1..n).find(|&s| ws[s] < target[s] - eps) else {
            break;
        };
        if transfers.len() >= max_steps {
            return Err(MajorizeError::NoConvergence(ws[j] - target[j]));
        }
        let (from, to) = (oy[j], oy[k]);
        let excess = ws[j] - target[j];
        let deficit = target[k] - ws[k];
        let amount = excess.min(deficit);
        let gap = w[from] - w[to];
        let before = (w[from], w[to]);
        if excess <= deficit {
            w[from] = target[j];
            w[to] += amount;
        } else {
            w[from] -= amount;
            w[to] = target[k];
        }
        witness.apply_t_transform(from, to, 1.0 - amount / gap);
        transfers.push(Transfer { from, to, amount, before });
    }

    let residual = oy.iter().enumerate().map(|(s, &i)| (w[i] - target[s]).abs()).fold(0.0, f64::max);
    if residual > 1e-9 * scale {
        return Err(MajorizeError::NoConvergence(residual));
    }
    Ok(TransferSequence { transfers, permutation, witness })
}
