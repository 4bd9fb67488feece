use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::theorem1::{verify_theorem1, Theorem1Instance, Theorem1Outcome};
use super::TheoremError;
use crate::report::ser_rational;

/// λ draws are multiples of `1 / DYADIC_DENOMINATOR`.
pub const DYADIC_DENOMINATOR: u32 = 1 << 16;

/// How each instance's λ vector is drawn. Both stay inside
/// `[0, lambda_max]^N` on the dyadic lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// Every coordinate uniform on the lattice.
    Uniform,
    /// A scale `r = lambda_max / 2^e` with `e` uniform in `0..16`, then
    /// every coordinate uniform on `[0, r]`. Small cone coordinates are
    /// where `G ≥ 0` lives for larger `N`, and uniform draws almost never
    /// reach them.
    ScaleMixture,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloConfig {
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub a: BigRational,
    pub samples: usize,
    pub seed: u64,
    pub lambda_max: u32,
    pub sampling: Sampling,
}

impl MonteCarloConfig {
    pub fn new(n: usize, a: BigRational, samples: usize, seed: u64) -> Self {
        MonteCarloConfig { n, a, samples, seed, lambda_max: 2, sampling: Sampling::ScaleMixture }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    pub config: MonteCarloConfig,
    pub holds: usize,
    pub not_applicable: usize,
    pub violations: usize,
    /// Smallest exact prefix margin among the instances that hold.
    #[serde(serialize_with = "crate::report::ser_opt_rational")]
    pub min_margin: Option<BigRational>,
    /// Lowest-numbered violating instance with its error.
    pub first_violation: Option<(usize, TheoremError)>,
}

impl MonteCarloSummary {
    fn empty(config: MonteCarloConfig) -> Self {
        MonteCarloSummary { config, holds: 0, not_applicable: 0, violations: 0, min_margin: None, first_violation: None }
    }

    fn merge(mut self, other: Self) -> Self {
        self.holds += other.holds;
        self.not_applicable += other.not_applicable;
        self.violations += other.violations;
        self.min_margin = match (self.min_margin, other.min_margin) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.first_violation = match (self.first_violation, other.first_violation) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Instance `index` of a run: its own ChaCha stream under the master seed,
/// so the draw does not depend on scheduling.
pub fn draw_instance(cfg: &MonteCarloConfig, index: usize) -> Theorem1Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut top = u64::from(cfg.lambda_max) * u64::from(DYADIC_DENOMINATOR);
    if cfg.sampling == Sampling::ScaleMixture {
        top >>= rng.random_range(0..16u32);
    }
    let den = BigInt::from(DYADIC_DENOMINATOR);
    let lambdas = (0..cfg.n)
        .map(|_| BigRational::new(BigInt::from(rng.random_range(0..=top)), den.clone()))
        .collect();
    Theorem1Instance::new(cfg.n, cfg.a.clone(), lambdas).expect("draws are nonnegative")
}

pub fn run_monte_carlo(cfg: &MonteCarloConfig) -> Result<MonteCarloSummary, TheoremError> {
    Theorem1Instance::new(cfg.n, cfg.a.clone(), vec![BigRational::from_integer(0.into()); cfg.n])?;
    let summary = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut s = MonteCarloSummary::empty(cfg.clone());
            match verify_theorem1(&draw_instance(cfg, i)) {
                Ok(Theorem1Outcome::Holds { verdict, .. }) => {
                    s.holds = 1;
                    s.min_margin = Some(verdict.min_margin);
                }
                Ok(Theorem1Outcome::NotApplicable { .. }) => s.not_applicable = 1,
                Err(e) => {
                    s.violations = 1;
                    s.first_violation = Some((i, e));
                }
            }
            s
        })
        .reduce(|| MonteCarloSummary::empty(cfg.clone()), MonteCarloSummary::merge);
    Ok(summary)
}
