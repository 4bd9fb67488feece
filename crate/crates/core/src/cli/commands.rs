use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::json;

use super::parse::{parse_mixture, parse_rational, parse_rational_list, parse_schedule};
use super::{CliError, Command, GridArgs, Outcome, Settings, EXIT_FAIL, EXIT_OK, EXIT_VIOLATION};
use crate::fockspace::{
    certify_nonnegative, mixture_radial, vacuum_decomposition, FockMixture, NonnegWitness, RadialProfile,
};
use crate::majorize::{
    decreasing_rearrangement, majorizes_continuous, wigner_entropy_parts, Density, GridConfig, MajorizeError,
};
use crate::poly::{to_f64, Poly};
use crate::polyexp::PolyExpFn;
use crate::report::{csv_table, rational_strings, Report, Verdict};
use crate::sigma::{equal_mixture, sigma_coefficients_bounded, symmetry_check, SigmaError};
use crate::theorems::{
    all_vertices, cone_vertex_generic, find_suffix_threshold, run_monte_carlo, verify_theorem1,
    verify_theorem2_convergence, MonteCarloConfig, Sampling, Theorem1Instance, Theorem1Outcome, TheoremError,
};

const DEFAULT_POINTS: usize = 201;
const DEFAULT_SAMPLES: usize = 10_000;
const DEFAULT_SCHEDULE: &str = "30:64,30:128,30:256";
/// Rows kept in rearrangement tables.
const MAX_ROWS: usize = 1024;

pub fn dispatch(cmd: &Command, s: &Settings) -> Result<Outcome, CliError> {
    match cmd {
        Command::Profile { mix, points, z_end } => profile(mix, *points, *z_end, s),
        Command::Majorize { a, b, grid, entropy } => majorize(a, b, grid, *entropy, s),
        Command::Entropy { mix, grid } => entropy(mix, grid, s),
        Command::Sigma { m, n, mixture, bound } => sigma(*m, *n, *mixture, *bound),
        Command::Theorem1 { n, a, lambdas, samples, sampling, vertices, symbolic } => {
            let mode = Theorem1Mode { lambdas: lambdas.as_deref(), samples: *samples, sampling: *sampling };
            theorem1(*n, a, mode, *vertices, *symbolic, s)
        }
        Command::Theorem2 { mixture, schedule } => theorem2(mixture, schedule.as_deref()),
    }
}

fn finish(report: Report, csv: Option<String>) -> Outcome {
    let exit = if report.all_pass() { EXIT_OK } else { EXIT_FAIL };
    Outcome { report, exit, csv }
}

fn mixture_json(mix: &FockMixture) -> BTreeMap<String, String> {
    mix.weights().iter().map(|(n, w)| (n.to_string(), w.to_string())).collect()
}

fn poly_json(p: &Poly) -> Vec<String> {
    rational_strings(p.coeffs())
}

fn func_json(c: &PolyExpFn) -> serde_json::Value {
    json!({ "dirac_weight": c.dirac_weight().to_string(), "poly": poly_json(c.poly()) })
}

fn negativity_verdict(f: &RadialProfile) -> Verdict {
    let cert = certify_nonnegative(f);
    let v = Verdict::new("nonnegative", cert.nonneg);
    match cert.witness {
        NonnegWitness::Negative { interval, point } => v
            .metric("certifying_interval", &interval)
            .metric("negative_at", point.to_string())
            .metric("value_at_point", to_f64(&f.poly().eval(&point))),
        NonnegWitness::NoSignChange { roots, .. } => v.metric("double_roots", roots.len()),
    }
}

fn profile(mix: &str, points: Option<usize>, z_end: Option<f64>, s: &Settings) -> Result<Outcome, CliError> {
    let mixture = parse_mixture(mix)?;
    let f = mixture_radial(&mixture);
    let points = match points {
        Some(p) => p,
        None => s.get("points")?.unwrap_or(DEFAULT_POINTS),
    };
    if points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let z_end = z_end.or_else(|| f.auto_z_max(1e-9)).unwrap_or(30.0);
    if !(z_end > 0.0 && z_end.is_finite()) {
        return Err(CliError::Usage(format!("--z-end must be positive, got {z_end}")));
    }
    let rows: Vec<Vec<f64>> = (0..points)
        .map(|i| {
            let z = z_end * i as f64 / (points - 1) as f64;
            vec![z, f.eval(z)]
        })
        .collect();

    let mut r = Report::new("profile");
    r.input("mixture", mixture_json(&mixture)).input("points", points).input("z_end", z_end);
    r.artifact("coefficients", poly_json(f.poly()))
        .artifact("polynomial", format!("({}) * exp(-z)", f.poly()))
        .artifact("samples", &rows);
    let total = f.func().total_integral();
    r.verdict(Verdict::new("normalized", total.is_one()).metric("total", total.to_string()));
    r.artifact("nonnegativity", negativity_verdict(&f));
    Ok(finish(r, Some(csv_table(&["z", "w"], &rows))))
}

/// Prefix masses `∫₀^t f↓` of both rearrangements on a common set of `t`.
fn rearrangement_csv(fa: &RadialProfile, fb: &RadialProfile, cfg: &GridConfig) -> Result<String, MajorizeError> {
    let ra = decreasing_rearrangement(fa, cfg)?;
    let rb = decreasing_rearrangement(fb, cfg)?;
    let t_end = ra.z_max.max(rb.z_max);
    let rows: Vec<Vec<f64>> = (0..=MAX_ROWS)
        .map(|i| {
            let t = t_end * i as f64 / MAX_ROWS as f64;
            vec![t, ra.cumulative(t), rb.cumulative(t)]
        })
        .collect();
    Ok(csv_table(&["t", "cumulative_a", "cumulative_b"], &rows))
}

fn majorize(a: &str, b: &str, grid: &GridArgs, with_entropy: bool, s: &Settings) -> Result<Outcome, CliError> {
    let (ma, mb) = (parse_mixture(a)?, parse_mixture(b)?);
    let (fa, fb) = (mixture_radial(&ma), mixture_radial(&mb));
    let cfg = s.grid(GridConfig::default(), grid)?;
    let mut r = Report::new("majorize");
    r.input("a", mixture_json(&ma)).input("b", mixture_json(&mb)).input("grid", &cfg);
    let mut csv = None;
    match majorizes_continuous(&fa, &fb, &cfg) {
        Ok(v) => {
            let pass = v.holds;
            r.verdict(
                Verdict::new("majorizes", pass)
                    .metric("min_margin", v.min_margin)
                    .metric("argmin_t", v.argmin_t)
                    .metric("total_a", v.total_x)
                    .metric("total_b", v.total_y)
                    .metric("tolerance", v.tolerance),
            );
            csv = rearrangement_csv(&fa, &fb, &cfg).ok();
        }
        Err(e) => {
            r.verdict(Verdict::new("majorizes", false).metric("error", e.to_string()));
        }
    }
    if with_entropy {
        let ecfg = s.grid(GridConfig::entropy(), grid)?;
        match (wigner_entropy_parts(&fa, &ecfg), wigner_entropy_parts(&fb, &ecfg)) {
            (Ok(ea), Ok(eb)) => {
                r.verdict(
                    Verdict::new("entropy_order", ea.entropy <= eb.entropy + ecfg.tolerance)
                        .metric("entropy_a", ea.entropy)
                        .metric("entropy_b", eb.entropy),
                );
            }
            (ea, eb) => {
                let msg = ea.err().or(eb.err()).map(|e| e.to_string()).unwrap_or_default();
                r.verdict(Verdict::new("entropy_order", false).metric("error", msg));
            }
        }
    }
    Ok(finish(r, csv))
}

fn entropy(mix: &str, grid: &GridArgs, s: &Settings) -> Result<Outcome, CliError> {
    let mixture = parse_mixture(mix)?;
    let f = mixture_radial(&mixture);
    let cfg = s.grid(GridConfig::entropy(), grid)?;
    let mut r = Report::new("entropy");
    r.input("mixture", mixture_json(&mixture)).input("grid", &cfg);
    let nonneg = negativity_verdict(&f);
    let ok = nonneg.pass;
    r.verdict(nonneg);
    if ok {
        match wigner_entropy_parts(&f, &cfg) {
            Ok(p) => {
                r.verdict(
                    Verdict::new("entropy", true)
                        .metric("entropy", p.entropy)
                        .metric("integral_w_ln_w", p.integral_f_ln_f)
                        .metric("ln_pi", p.ln_pi),
                );
            }
            Err(e) => {
                r.verdict(Verdict::new("entropy", false).metric("error", e.to_string()));
            }
        }
    }
    Ok(finish(r, None))
}

fn sigma_error(e: &SigmaError) -> Verdict {
    Verdict::new("bounds", false).metric("error", e.to_string())
}

fn sigma(m: Option<usize>, n: Option<usize>, mixture: Option<usize>, bound: usize) -> Result<Outcome, CliError> {
    let mut r = Report::new("sigma");
    r.input("bound", bound);
    match (m, n, mixture) {
        (None, None, Some(total)) => {
            r.input("mixture", total);
            if total > bound {
                r.verdict(sigma_error(&SigmaError::BoundExceeded { total, bound }));
                return Ok(finish(r, None));
            }
            let rows: Result<Vec<_>, _> =
                (0..=total).map(|k| sigma_coefficients_bounded(k, total - k, bound)).collect();
            let rows = match rows {
                Ok(rows) => rows,
                Err(e) => {
                    r.verdict(sigma_error(&e));
                    return Ok(finish(r, None));
                }
            };
            let row_sums = rows.iter().all(|c| c.total().is_one());
            let nonneg_weights = rows.iter().all(|c| c.a.iter().all(|w| !w.is_negative()));
            r.artifact("table", rows.iter().map(|c| rational_strings(&c.a)).collect::<Vec<_>>());
            r.verdict(Verdict::new("row_sums", row_sums));
            r.verdict(Verdict::new("nonnegative_weights", nonneg_weights));
            r.verdict(Verdict::new("symmetry", symmetry_check(total)));
            match equal_mixture(total) {
                Ok(mix) => {
                    r.artifact("mixture", mixture_json(&mix));
                    r.verdict(Verdict::new("uniform_mixture_identity", true));
                    r.verdict(negativity_verdict(&mixture_radial(&mix)));
                }
                Err(e) => {
                    r.verdict(Verdict::new("uniform_mixture_identity", false).metric("error", e.to_string()));
                }
            }
        }
        (Some(m), Some(n), None) => {
            r.input("m", m).input("n", n);
            match sigma_coefficients_bounded(m, n, bound) {
                Ok(c) => {
                    r.artifact("coefficients", rational_strings(&c.a));
                    r.verdict(Verdict::new("normalized", c.total().is_one()));
                    r.verdict(Verdict::new("nonnegative_weights", c.a.iter().all(|w| !w.is_negative())));
                }
                Err(e) => {
                    r.verdict(sigma_error(&e));
                }
            }
        }
        _ => return Err(CliError::Usage("sigma needs either --m and --n, or --mixture".into())),
    }
    Ok(finish(r, None))
}

fn violation(mut r: Report, e: &TheoremError) -> Outcome {
    r.verdict(Verdict::new("no_violation", false).metric("error", e.to_string()));
    r.artifact("violation", e);
    let exit = match e {
        TheoremError::TheoremViolation { .. }
        | TheoremError::ConstructionFailure { .. }
        | TheoremError::ConvergenceViolation(_) => EXIT_VIOLATION,
        _ => EXIT_FAIL,
    };
    Outcome { report: r, exit, csv: None }
}

fn symbolic(p: &Poly) -> String {
    p.to_string().replace('z', "a")
}

struct Theorem1Mode<'a> {
    lambdas: Option<&'a str>,
    samples: Option<usize>,
    sampling: Sampling,
}

fn theorem1(
    n: usize,
    a: &str,
    mode: Theorem1Mode<'_>,
    vertices: bool,
    with_symbolic: bool,
    s: &Settings,
) -> Result<Outcome, CliError> {
    let a_q = parse_rational(a)?;
    let mut r = Report::new("theorem1");
    r.input("n", n).input("a", a_q.to_string());
    if !(a_q.is_positive() && a_q < BigRational::one()) || n == 0 {
        return Err(CliError::Usage(format!("need N >= 1 and 0 < a < 1, got N = {n}, a = {a_q}")));
    }

    if vertices {
        r.input("mode", "vertices");
        let list = match all_vertices(n, &a_q) {
            Ok(list) => list,
            Err(TheoremError::InvalidInstance(msg)) => return Err(CliError::Usage(msg)),
            Err(e) => return Ok(violation(r, &e)),
        };
        let a_sym = Poly::x();
        let rows: Vec<_> = list
            .iter()
            .map(|v| {
                let mut row = json!({
                    "indices": v.spec.to_string(),
                    "v": rational_strings(&v.vector[..n]),
                    "vector": rational_strings(&v.vector),
                    "lambdas": rational_strings(&v.lambdas),
                    "transfers": v.slices.len(),
                });
                if with_symbolic {
                    let g = cone_vertex_generic(&v.spec, &a_sym);
                    row["symbolic_vector"] = json!(g.vector.iter().map(symbolic).collect::<Vec<_>>());
                    row["symbolic_lambdas"] = json!(g.lambdas.iter().map(symbolic).collect::<Vec<_>>());
                }
                row
            })
            .collect();
        r.artifact("vertices", rows);
        r.verdict(Verdict::new("all_majorized", list.iter().all(|v| v.verdict.holds)).metric("count", list.len()));
        return Ok(finish(r, None));
    }

    if let Some(text) = mode.lambdas {
        let l = parse_rational_list(text)?;
        r.input("mode", "instance").input("lambdas", rational_strings(&l));
        let inst = Theorem1Instance::new(n, a_q, l).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(match verify_theorem1(&inst) {
            Ok(Theorem1Outcome::Holds { g, verdict }) => {
                r.artifact("g", rational_strings(&g));
                r.verdict(Verdict::new("majorized", true).metric("min_margin", verdict.min_margin.to_string()));
                finish(r, None)
            }
            Ok(Theorem1Outcome::NotApplicable { g, index, value }) => {
                r.artifact("g", rational_strings(&g));
                r.verdict(
                    Verdict::new("guard_g_nonnegative", false)
                        .metric("index", index)
                        .metric("value", value.to_string()),
                );
                finish(r, None)
            }
            Err(e) => violation(r, &e),
        });
    }

    let samples = match mode.samples {
        Some(k) => k,
        None => s.get("samples")?.unwrap_or(DEFAULT_SAMPLES),
    };
    r.seed = Some(s.seed);
    r.input("mode", "monte_carlo").input("samples", samples);
    let mut cfg = MonteCarloConfig::new(n, a_q, samples, s.seed);
    cfg.sampling = mode.sampling;
    let summary = run_monte_carlo(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    r.artifact("summary", &summary);
    r.verdict(
        Verdict::new("no_violation", summary.violations == 0)
            .metric("holds", summary.holds)
            .metric("not_applicable", summary.not_applicable)
            .metric("violations", summary.violations),
    );
    let exit = if summary.violations > 0 { EXIT_VIOLATION } else { EXIT_OK };
    Ok(Outcome { report: r, exit, csv: None })
}

fn theorem2(mixture: &str, schedule: Option<&str>) -> Result<Outcome, CliError> {
    let mix = parse_mixture(mixture)?;
    let schedule_text = schedule.unwrap_or(DEFAULT_SCHEDULE);
    let levels = parse_schedule(schedule_text)?;
    let c = vacuum_decomposition(&mixture_radial(&mix)).c;
    let mut r = Report::new("theorem2");
    r.input("mixture", mixture_json(&mix))
        .input("schedule", levels.iter().map(|(z, n)| (z.to_string(), *n)).collect::<Vec<_>>())
        .input("c", func_json(&c));
    match verify_theorem2_convergence(&c, &levels) {
        Ok(report) => {
            for l in &report.levels {
                let pass = l.status == crate::theorems::LevelStatus::Holds;
                r.verdict(
                    Verdict::new(format!("level_n{}", l.n), pass)
                        .metric("status", &l.status)
                        .metric("error_metric", l.error_metric),
                );
            }
            r.verdict(Verdict::new("error_non_increasing", report.error_non_increasing));
            if let Some(w) = &report.witness {
                r.verdict(
                    Verdict::new("witness_doubly_stochastic", w.doubly_stochastic)
                        .metric("dim", w.dim)
                        .metric("max_row_deviation", w.max_row_deviation)
                        .metric("max_col_deviation", w.max_col_deviation)
                        .metric("residual", w.residual),
                );
            }
            r.artifact("levels", &report.levels);
            Ok(finish(r, None))
        }
        Err(e @ TheoremError::SuffixConditionFailed { n, .. }) => {
            let z_end = &levels.iter().find(|l| l.1 == n).expect("failing level is in the schedule").0;
            let threshold = find_suffix_threshold(&c, z_end, n, 8).ok();
            r.artifact("suffix_threshold", threshold.map(|(n, dz)| json!({ "n": n, "delta_z": dz })));
            Ok(violation(r, &e))
        }
        Err(e) => Ok(violation(r, &e)),
    }
}
