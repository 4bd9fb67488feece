use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::TheoremError;
use crate::fockspace::decomposition_of;
use crate::majorize::{
    convolve, is_doubly_stochastic, majorizes_discrete, robin_hood_decompose, MajorizationVerdict,
};
use crate::poly::{to_f64, Poly};
use crate::polyexp::PolyExpFn;
use crate::report::ser_rational;
use crate::sturm::{isolate_roots, refine};

/// Discrete stand-in for `c ∗ e^(−z)` on `[0, z_end]` split into `2N`
/// cells.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem2Discretization {
    #[serde(skip)]
    pub c: PolyExpFn,
    #[serde(serialize_with = "ser_rational")]
    pub z_end: BigRational,
    pub n: usize,
    pub delta_z: f64,
    /// Point of each of the first `N − 1` cells where `c` is largest.
    pub sup_points: Vec<f64>,
    /// `∫_{z_N}^∞ c`.
    pub c_last: f64,
    pub k_tilde: f64,
    pub c_vec: Vec<f64>,
    pub e0_vec: Vec<f64>,
    pub g_vec: Vec<f64>,
}

impl Theorem2Discretization {
    /// `e₀` padded to length `2N`.
    pub fn e0_padded(&self) -> Vec<f64> {
        let mut v = self.e0_vec.clone();
        v.resize(2 * self.n, 0.0);
        v
    }
}

fn check_entry_conditions(c: &PolyExpFn) -> Result<(), TheoremError> {
    let d = decomposition_of(c.clone());
    if d.entry_conditions_hold() {
        Ok(())
    } else {
        Err(TheoremError::EntryConditionsFailed { total: d.total.to_string(), tail_nonnegative: d.tail_nonnegative() })
    }
}

/// Critical points of `P(z) e^(−z)` in `(0, end]`, i.e. roots of `P′ − P`.
fn critical_points(p: &Poly, end: &BigRational) -> Vec<f64> {
    let q = p.derivative() - p;
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let width = BigRational::new(BigInt::from(1), BigInt::from(1u64 << 50));
    isolate_roots(&q, &BigRational::zero(), end)
        .iter()
        .map(|iv| {
            let r = refine(&q, iv, &width);
            (to_f64(&r.lo) + to_f64(&r.hi)) / 2.0
        })
        .collect()
}

pub fn build_discretization(c: &PolyExpFn, z_end: &BigRational, n: usize) -> Result<Theorem2Discretization, TheoremError> {
    if n < 1 || !z_end.is_positive() {
        return Err(TheoremError::InvalidInstance(format!("need N >= 1 and z_end > 0, got N = {n}, z_end = {z_end}")));
    }
    check_entry_conditions(c)?;
    let z_n = z_end / BigRational::from_integer(2.into());
    let delta_z = to_f64(z_end) / (2 * n) as f64;
    let fl = c.to_float();
    let crit = critical_points(c.poly(), &z_n);

    let mut sup_points = Vec::with_capacity(n.saturating_sub(1));
    let mut sups = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let (lo, hi) = ((i - 1) as f64 * delta_z, i as f64 * delta_z);
        let candidates = [lo, hi].into_iter().chain(crit.iter().copied().filter(|z| *z > lo && *z < hi));
        let (z, v) = candidates
            .map(|z| (z, fl.value(z)))
            .fold((lo, f64::NEG_INFINITY), |best, cand| if cand.1 > best.1 { cand } else { best });
        sup_points.push(z);
        sups.push(v);
    }

    let c_last = fl.tail(to_f64(&z_n));
    let decay = -(-delta_z).exp_m1();
    let mut raw = Vec::with_capacity(n + 1);
    raw.push(fl.dirac);
    raw.extend(sups.iter().map(|s| s * decay));
    raw.push(c_last * decay / delta_z);
    let k_tilde = 1.0 / raw.iter().sum::<f64>();
    let c_vec: Vec<f64> = raw.iter().map(|r| r * k_tilde).collect();

    // every suffix sum past the first entry must be nonnegative
    let mut suffix = 0.0;
    for k in (1..=n).rev() {
        suffix += c_vec[k];
        if suffix < 0.0 {
            return Err(TheoremError::SuffixConditionFailed { delta_z, n, k, value: suffix });
        }
    }

    let e0_vec: Vec<f64> = (0..n).map(|i| (-(i as f64) * delta_z).exp()).collect();
    let g_vec = convolve(&c_vec, &e0_vec);
    Ok(Theorem2Discretization {
        c: c.clone(),
        z_end: z_end.clone(),
        n,
        delta_z,
        sup_points,
        c_last,
        k_tilde,
        c_vec,
        e0_vec,
        g_vec,
    })
}

/// Doubles `N` from `n_start` until the suffix condition holds, returning
/// the first passing `N` and its `Δz`.
pub fn find_suffix_threshold(
    c: &PolyExpFn,
    z_end: &BigRational,
    n_start: usize,
    max_doublings: usize,
) -> Result<(usize, f64), TheoremError> {
    let mut n = n_start.max(1);
    let mut last = None;
    for _ in 0..=max_doublings {
        match build_discretization(c, z_end, n) {
            Ok(d) => return Ok((n, d.delta_z)),
            Err(e @ TheoremError::SuffixConditionFailed { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        n *= 2;
    }
    Err(last.expect("at least one attempt"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status")]
pub enum LevelStatus {
    /// `G ≥ 0` and `e₀ ≻ G`.
    Holds,
    /// `G` has a negative entry, so the discrete theorem says nothing.
    NotApplicable { index: usize, value: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelReport {
    #[serde(serialize_with = "ser_rational")]
    pub z_end: BigRational,
    pub n: usize,
    pub delta_z: f64,
    pub k_tilde: f64,
    pub status: LevelStatus,
    pub verdict: Option<MajorizationVerdict>,
    /// Grid points with `g(z_j) ≥ tolerance` that were checked for `G ≥ 0`.
    pub sign_points_checked: usize,
    /// `max_{j<N} |G_j / k̃ − g(z_j)|`.
    pub error_metric: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessSummary {
    pub dim: usize,
    pub transfers: usize,
    pub max_row_deviation: f64,
    pub max_col_deviation: f64,
    pub min_entry: f64,
    /// `max |D e₀ − G|`.
    pub residual: f64,
    pub doubly_stochastic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub levels: Vec<LevelReport>,
    pub error_non_increasing: bool,
    pub witness: Option<WitnessSummary>,
}

impl ConvergenceReport {
    pub fn all_hold(&self) -> bool {
        self.levels.iter().all(|l| l.status == LevelStatus::Holds)
    }
}

const SIGN_TOLERANCE: f64 = 1e-9;
/// Roundoff allowance when comparing the error metric across levels.
const METRIC_SLACK: f64 = 1e-13;

fn level_report(d: &Theorem2Discretization, g: &PolyExpFn) -> Result<LevelReport, TheoremError> {
    let gf = g.to_float();
    let mut sign_points_checked = 0;
    let mut error_metric: f64 = 0.0;
    for j in 0..d.n {
        let z = j as f64 * d.delta_z;
        let exact = gf.value(z) + if j == 0 { gf.dirac } else { 0.0 };
        if exact >= SIGN_TOLERANCE {
            sign_points_checked += 1;
            if d.g_vec[j] < 0.0 {
                return Err(TheoremError::ConvergenceViolation(format!(
                    "g({z}) = {exact:e} but G[{j}] = {:e} (N = {})",
                    d.g_vec[j], d.n
                )));
            }
        }
        error_metric = error_metric.max((d.g_vec[j] / d.k_tilde - exact).abs());
    }
    let negative = d.g_vec.iter().enumerate().find(|(_, v)| **v < 0.0);
    let (status, verdict) = match negative {
        Some((index, &value)) => (LevelStatus::NotApplicable { index, value }, None),
        None => {
            let e0 = d.e0_padded();
            let scale: f64 = e0.iter().sum();
            let v = majorizes_discrete(&e0, &d.g_vec, 1e-12 * scale);
            if !v.holds {
                return Err(TheoremError::TheoremViolation {
                    n: d.n,
                    a: format!("exp(-{})", d.delta_z),
                    lambdas: Vec::new(),
                    g: d.g_vec.iter().map(|x| x.to_string()).collect(),
                    min_margin: v.min_margin.to_string(),
                });
            }
            (LevelStatus::Holds, Some(v))
        }
    };
    Ok(LevelReport {
        z_end: d.z_end.clone(),
        n: d.n,
        delta_z: d.delta_z,
        k_tilde: d.k_tilde,
        status,
        verdict,
        sign_points_checked,
        error_metric,
    })
}

fn witness_summary(d: &Theorem2Discretization) -> Result<WitnessSummary, TheoremError> {
    let e0 = d.e0_padded();
    let seq = robin_hood_decompose(&e0, &d.g_vec)
        .map_err(|e| TheoremError::ConvergenceViolation(format!("no witness at N = {}: {e}", d.n)))?;
    let w = &seq.witness;
    let (max_row_deviation, max_col_deviation) = w.stochastic_deviation();
    let residual = w.mul_vec(&e0).iter().zip(&d.g_vec).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(WitnessSummary {
        dim: w.dim(),
        transfers: seq.transfers.len(),
        max_row_deviation,
        max_col_deviation,
        min_entry: w.min_entry(),
        residual,
        doubly_stochastic: is_doubly_stochastic(w, 1e-12),
    })
}

/// Runs every level of `schedule` (`N` doubling, `z_end` nondecreasing).
/// Levels whose `G` has negative entries are reported as not applicable;
/// a failed sign correspondence, a failed majorization under the guard or a
/// growing error metric are errors.
pub fn verify_theorem2_convergence(
    c: &PolyExpFn,
    schedule: &[(BigRational, usize)],
) -> Result<ConvergenceReport, TheoremError> {
    if schedule.is_empty() {
        return Err(TheoremError::InvalidInstance("empty schedule".into()));
    }
    for w in schedule.windows(2) {
        if w[1].1 != 2 * w[0].1 || w[1].0 < w[0].0 {
            return Err(TheoremError::InvalidInstance(format!(
                "schedule must double N with nondecreasing z_end: {}:{} then {}:{}",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    check_entry_conditions(c)?;
    let g = c.convolve_exp();
    let levels_data: Vec<Theorem2Discretization> =
        schedule.iter().map(|(z, n)| build_discretization(c, z, *n)).collect::<Result<_, _>>()?;
    let levels = levels_data.iter().map(|d| level_report(d, &g)).collect::<Result<Vec<_>, _>>()?;

    let error_non_increasing = match levels.as_slice() {
        [.., prev, last] => last.error_metric <= prev.error_metric + METRIC_SLACK,
        _ => true,
    };
    if !error_non_increasing {
        let [.., prev, last] = levels.as_slice() else { unreachable!() };
        return Err(TheoremError::ConvergenceViolation(format!(
            "error metric grew from {:e} (N = {}) to {:e} (N = {})",
            prev.error_metric, prev.n, last.error_metric, last.n
        )));
    }
    let finest = levels_data.last().unwrap();
    let witness = match levels.last().unwrap().status {
        LevelStatus::Holds => Some(witness_summary(finest)?),
        LevelStatus::NotApplicable { .. } => None,
    };
    Ok(ConvergenceReport { levels, error_non_increasing, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, ratio};

    fn exp_decay() -> PolyExpFn {
        PolyExpFn::from_poly(Poly::from_ints(&[1]))
    }

    #[test]
    fn dirac_gives_sampled_exponential() {
        let d = build_discretization(&PolyExpFn::dirac(int(1)), &int(10), 16).unwrap();
        assert_eq!(d.k_tilde, 1.0);
        assert_eq!(d.g_vec, d.e0_padded());
    }

    #[test]
    fn erlang_samples() {
        let d = build_discretization(&exp_decay(), &int(30), 256).unwrap();
        assert_eq!(d.c_vec[0], 0.0);
        for j in 0..d.n {
            let z = j as f64 * d.delta_z;
            assert!((d.g_vec[j] / d.k_tilde - z * (-z).exp()).abs() < 2.0 * d.delta_z);
        }
    }

    #[test]
    fn sup_is_at_interior_peak() {
        // z e^(−z) peaks at z = 1, inside the cell [0.9, 1.2] for Δz = 0.3
        let c = PolyExpFn::from_poly(Poly::from_ints(&[0, 1]));
        let d = build_discretization(&c, &ratio(48, 5), 16);
        // z e^(−z) has total 1 but the tail condition fails for this c, so
        // probe the supremum through a normalized variant instead
        assert!(d.is_ok());
        let d = d.unwrap();
        assert!((d.sup_points[3] - 1.0).abs() < 1e-12, "{:?}", d.sup_points);
    }

    #[test]
    fn signed_c_is_not_applicable() {
        let c = PolyExpFn::new(int(-1), Poly::from_ints(&[2]));
        let r = verify_theorem2_convergence(&c, &[(int(30), 64), (int(30), 128)]).unwrap();
        assert!(r.levels.iter().all(|l| matches!(l.status, LevelStatus::NotApplicable { index: 0, .. })));
        assert!(r.witness.is_none());
    }

    #[test]
    fn entry_conditions_enforced() {
        let c = PolyExpFn::from_poly(Poly::from_ints(&[2]));
        assert!(matches!(
            build_discretization(&c, &int(10), 8),
            Err(TheoremError::EntryConditionsFailed { .. })
        ));
    }

    #[test]
    fn schedule_must_double() {
        let r = verify_theorem2_convergence(&exp_decay(), &[(int(30), 64), (int(30), 100)]);
        assert!(matches!(r, Err(TheoremError::InvalidInstance(_))));
    }
}
