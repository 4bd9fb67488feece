use serde::Serialize;

use super::{descending_order, prefix_margins, MajorizationVerdict, MajorizeError};
use crate::fockspace::RadialProfile;
use crate::polyexp::{FloatPolyExp, PolyExpFn};

/// Discretization of `[0, z_max]` used by the continuous verdicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridConfig {
    /// Truncation point; `None` picks the smallest integer meeting the tail
    /// bound.
    pub z_max: Option<f64>,
    pub cells: usize,
    pub refine_rounds: usize,
    pub tolerance: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { z_max: None, cells: 1 << 14, refine_rounds: 3, tolerance: 1e-9 }
    }
}

impl GridConfig {
    /// Defaults with the looser entropy tolerance.
    pub fn entropy() -> Self {
        GridConfig { tolerance: 1e-6, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), MajorizeError> {
        if let Some(z) = self.z_max {
            if !(z > 0.0 && z.is_finite()) {
                return Err(MajorizeError::InvalidGrid(format!("z_max must be positive, got {z}")));
            }
        }
        if self.cells < 16 {
            return Err(MajorizeError::InvalidGrid(format!("cells must be >= 16, got {}", self.cells)));
        }
        if self.refine_rounds == 0 {
            return Err(MajorizeError::InvalidGrid("refine_rounds must be positive".into()));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(MajorizeError::InvalidGrid(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Something that can be cut into grid cells on the half-line.
pub trait Density {
    /// Representative value on each of `cells` equal cells of `[0, z_max]`.
    fn cell_values(&self, z_max: f64, cells: usize) -> Vec<f64>;

    /// Upper bound on `∫ₓ^∞ |f|`.
    fn tail_bound(&self, x: f64) -> f64;

    /// Smallest integer `z` with `tail_bound(z) < limit`, if one exists below
    /// `1e4`. Assumes `tail_bound` is non-increasing.
    fn auto_z_max(&self, limit: f64) -> Option<f64> {
        if self.tail_bound(1.0) < limit {
            return Some(1.0);
        }
        let mut hi = 2.0;
        while self.tail_bound(hi) >= limit {
            hi *= 2.0;
            if hi > 1e4 {
                return None;
            }
        }
        let mut lo = hi / 2.0;
        while hi - lo > 1.0 {
            let mid = ((lo + hi) / 2.0).floor();
            if self.tail_bound(mid) < limit {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

impl Density for FloatPolyExp {
    /// Exact cell averages: each cell carries precisely its share of the
    /// integral.
    fn cell_values(&self, z_max: f64, cells: usize) -> Vec<f64> {
        let h = z_max / cells as f64;
        let tails: Vec<f64> = (0..=cells).map(|i| self.tail(i as f64 * h)).collect();
        tails.windows(2).map(|w| (w[0] - w[1]) / h).collect()
    }

    fn tail_bound(&self, x: f64) -> f64 {
        self.abs_tail_bound(x)
    }
}

impl Density for PolyExpFn {
    fn cell_values(&self, z_max: f64, cells: usize) -> Vec<f64> {
        self.to_float().cell_values(z_max, cells)
    }

    fn tail_bound(&self, x: f64) -> f64 {
        self.to_float().tail_bound(x)
    }
}

impl Density for RadialProfile {
    fn cell_values(&self, z_max: f64, cells: usize) -> Vec<f64> {
        self.to_float().cell_values(z_max, cells)
    }

    fn tail_bound(&self, x: f64) -> f64 {
        self.to_float().tail_bound(x)
    }
}

/// A function known only through point samples, assumed to vanish beyond
/// `support_end`. Cells take the value at their midpoint.
pub struct SampledFunction<F> {
    pub f: F,
    pub support_end: f64,
}

impl<F: Fn(f64) -> f64> Density for SampledFunction<F> {
    fn cell_values(&self, z_max: f64, cells: usize) -> Vec<f64> {
        let h = z_max / cells as f64;
        (0..cells).map(|i| (self.f)((i as f64 + 0.5) * h)).collect()
    }

    fn tail_bound(&self, x: f64) -> f64 {
        if x >= self.support_end {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn auto_z_max(&self, _limit: f64) -> Option<f64> {
        Some(self.support_end)
    }
}

/// Non-increasing rearrangement on a uniform grid, with equal-valued cells
/// merged.
#[derive(Clone, Debug, Serialize)]
pub struct RearrangedProfile {
    /// `(value, measure)` pairs, values strictly decreasing.
    pub cells: Vec<(f64, f64)>,
    pub total_mass: f64,
    pub z_max: f64,
}

impl RearrangedProfile {
    /// Distribution function `m_f(t) = |{z : f(z) > t}|`.
    pub fn level_measure(&self, t: f64) -> f64 {
        self.cells.iter().take_while(|(v, _)| *v > t).map(|(_, m)| m).sum()
    }

    /// `∫₀^s f↓`.
    pub fn cumulative(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        let mut left = s;
        for &(v, m) in &self.cells {
            if left <= 0.0 {
                break;
            }
            let take = m.min(left);
            acc += v * take;
            left -= take;
        }
        acc
    }
}

fn resolve_z_max<D: Density + ?Sized>(f: &D, cfg: &GridConfig) -> Result<f64, MajorizeError> {
    let limit = cfg.tolerance / 10.0;
    let z_max = match cfg.z_max {
        Some(z) => z,
        None => f.auto_z_max(limit).ok_or(MajorizeError::TailTooHeavy {
            z_max: 1e4,
            bound: f.tail_bound(1e4),
            limit,
        })?,
    };
    let bound = f.tail_bound(z_max);
    if bound >= limit {
        return Err(MajorizeError::TailTooHeavy { z_max, bound, limit });
    }
    Ok(z_max)
}

fn sorted_cells<D: Density + ?Sized>(f: &D, z_max: f64, cells: usize) -> Vec<f64> {
    let v = f.cell_values(z_max, cells);
    descending_order(&v).into_iter().map(|i| v[i]).collect()
}

pub fn decreasing_rearrangement<D: Density + ?Sized>(
    f: &D,
    cfg: &GridConfig,
) -> Result<RearrangedProfile, MajorizeError> {
    cfg.validate()?;
    let z_max = resolve_z_max(f, cfg)?;
    let h = z_max / cfg.cells as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    for v in sorted_cells(f, z_max, cfg.cells) {
        match cells.last_mut() {
            Some((last, m)) if *last == v => *m += h,
            _ => cells.push((v, h)),
        }
    }
    let total_mass = cells.iter().map(|(v, m)| v * m).sum();
    Ok(RearrangedProfile { cells, total_mass, z_max })
}

/// `f ≻ g` for radial profiles: prefix masses of the two rearrangements are
/// compared on a common grid, refined `refine_rounds` times by doubling the
/// cell count. The verdict of the last two rounds must agree.
pub fn majorizes_continuous<F, G>(f: &F, g: &G, cfg: &GridConfig) -> Result<MajorizationVerdict, MajorizeError>
where
    F: Density + ?Sized,
    G: Density + ?Sized,
{
    cfg.validate()?;
    let z_max = resolve_z_max(f, cfg)?.max(resolve_z_max(g, cfg)?);
    let mut previous: Option<(usize, bool)> = None;
    let mut verdict = None;
    for round in 0..cfg.refine_rounds {
        let cells = cfg.cells << round;
        let h = z_max / cells as f64;
        let fs: Vec<f64> = sorted_cells(f, z_max, cells).into_iter().map(|v| v * h).collect();
        let gs: Vec<f64> = sorted_cells(g, z_max, cells).into_iter().map(|v| v * h).collect();
        let (min, arg, tf, tg) = prefix_margins(&fs, &gs);
        let v = MajorizationVerdict::decide(tf, tg, min, arg, arg as f64 * h, cfg.tolerance);
        if round + 1 == cfg.refine_rounds {
            if let Some((cells_prev, held)) = previous {
                if held != v.holds {
                    return Err(MajorizeError::Unstable { cells_prev, cells_last: cells });
                }
            }
        }
        previous = Some((cells, v.holds));
        verdict = Some(v);
    }
    Ok(verdict.expect("refine_rounds >= 1"))
}
