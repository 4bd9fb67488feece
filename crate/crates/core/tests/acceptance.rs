//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{exact_majorizes, pa, pas, VERTICES_N3, STEPS_N7_FIRST, STEPS_N7_SECOND};
use phasemaj::fockspace::{mixture_from_recursion, recursion_identity_check};
use phasemaj::majorize::{is_doubly_stochastic, wigner_entropy};
use phasemaj::poly::{int, laguerre, ratio};
use phasemaj::quadrature::integrate;
use phasemaj::sigma::{equal_mixture, sigma_coefficients_alt_bounds, sigma_table, symmetry_check};
use phasemaj::theorems::{
    cone_vertex, cone_vertex_generic, run_monte_carlo, verify_theorem2_convergence, ConeVertexSpec, LevelStatus,
    MonteCarloConfig,
};
use phasemaj::{
    certify_nonnegative, majorizes_continuous, mixture_radial, robin_hood_decompose, vacuum_decomposition,
    FockMixture, GridConfig, Poly, PolyExpFn, RadialProfile,
};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

type Check = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let vac = RadialProfile::vacuum();
    let mix = mixture_radial(&FockMixture::new([(0, ratio(1, 2)), (1, ratio(1, 2))]).unwrap());
    let cfg = GridConfig::default();
    let v = majorizes_continuous(&vac, &mix, &cfg).map_err(|e| e.to_string())?;
    ensure(v.holds, || format!("verdict fails: {v:?}"))?;
    ensure(v.min_margin >= -1e-9, || format!("min_margin {:e}", v.min_margin))?;
    let mismatch = (v.total_x - v.total_y).abs();
    ensure(mismatch <= 1e-9, || format!("total mismatch {mismatch:e}"))?;
    // the verdict one refinement earlier must agree
    let coarser = GridConfig { refine_rounds: cfg.refine_rounds - 1, ..cfg.clone() };
    let w = majorizes_continuous(&vac, &mix, &coarser).map_err(|e| e.to_string())?;
    ensure(w.holds == v.holds, || "verdict changed across the last refinement".into())?;
    Ok(format!("min_margin {:.2e}, total mismatch {:.2e}", v.min_margin, mismatch))
}

fn criterion_2() -> Check {
    let a_values = [ratio(1, 2), ratio(1, 3)];
    for (word, vector, lambdas) in VERTICES_N3 {
        let spec: ConeVertexSpec = word.parse()?;
        let expect_v = pas(&vector);
        let expect_l = pas(&lambdas);
        let sym = cone_vertex_generic(&spec, &Poly::x());
        ensure(sym.vector == expect_v, || format!("{word}: symbolic vector {:?}", sym.vector))?;
        ensure(sym.lambdas == expect_l, || format!("{word}: symbolic λ {:?}", sym.lambdas))?;
        for a in &a_values {
            let vertex = cone_vertex(&spec, a).map_err(|e| format!("{word} at a = {a}: {e}"))?;
            let ev: Vec<BigRational> = expect_v.iter().map(|p| p.eval(a)).collect();
            let el: Vec<BigRational> = expect_l.iter().map(|p| p.eval(a)).collect();
            ensure(vertex.vector == ev, || format!("{word} at a = {a}: vector"))?;
            ensure(vertex.lambdas == el, || format!("{word} at a = {a}: λ"))?;
            let v0: Vec<BigRational> = pas(&VERTICES_N3[0].1).iter().map(|p| p.eval(a)).collect();
            ensure(exact_majorizes(&v0, &vertex.vector), || format!("{word} at a = {a}: not majorized"))?;
            ensure(vertex.verdict.holds, || format!("{word} at a = {a}: library verdict"))?;
        }
    }
    Ok("8 rows symbolic, at a = 1/2 and a = 1/3".into())
}

fn criterion_3() -> Check {
    for (word, vector) in [STEPS_N7_FIRST, STEPS_N7_SECOND] {
        let spec: ConeVertexSpec = word.parse()?;
        let got = cone_vertex_generic(&spec, &Poly::x()).vector;
        ensure(got == pas(&vector), || {
            let shown: Vec<String> = got.iter().map(|p| p.to_string()).collect();
            format!("{word}: {shown:?}")
        })?;
    }
    // also through the exact slice construction at a sample ratio
    let a = ratio(2, 5);
    let vertex = cone_vertex(&STEPS_N7_SECOND.0.parse()?, &a).map_err(|e| e.to_string())?;
    let expect: Vec<BigRational> = STEPS_N7_SECOND.1.iter().map(|w| pa(w).eval(&a)).collect();
    ensure(vertex.vector == expect, || "slice construction disagrees at a = 2/5".into())?;
    Ok(format!("pattern matches, {} slice transfers at a = 2/5", vertex.slices.len()))
}

fn criterion_4() -> Check {
    let mut lines = Vec::new();
    for n in 2..=6 {
        for a in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
            let cfg = MonteCarloConfig::new(n, a.clone(), 10_000, 0);
            let s = run_monte_carlo(&cfg).map_err(|e| e.to_string())?;
            ensure(s.violations == 0, || format!("N = {n}, a = {a}: {:?}", s.first_violation))?;
            ensure(s.holds > 0 && s.not_applicable > 0, || {
                format!("N = {n}, a = {a}: holds {} not applicable {}", s.holds, s.not_applicable)
            })?;
            lines.push(s.holds.min(s.not_applicable));
        }
    }
    Ok(format!("15 configurations, 0 violations, rarest branch seen {} times", lines.iter().min().unwrap()))
}

fn criterion_5() -> Check {
    for m in 0..=12 {
        let mix = equal_mixture(m).map_err(|e| e.to_string())?;
        ensure(mix == FockMixture::uniform(m + 1), || format!("M = {m}: not uniform"))?;
        ensure(symmetry_check(m), || format!("M = {m}: asymmetric"))?;
        let table = sigma_table(m).map_err(|e| e.to_string())?;
        for (row_index, row) in table.iter().enumerate() {
            ensure(row.iter().sum::<BigRational>().is_one(), || format!("M = {m}: row {row_index}"))?;
            let alt = sigma_coefficients_alt_bounds(row_index, m - row_index);
            ensure(&alt == row, || format!("M = {m}: row {row_index} differs from the unrestricted sum"))?;
        }
        for z in 0..=m {
            let col: BigRational = table.iter().map(|r| &r[z]).sum();
            ensure(col.is_one(), || format!("M = {m}: column {z} sums to {col}"))?;
        }
        ensure(certify_nonnegative(&mixture_radial(&mix)).nonneg, || format!("M = {m}: profile negative"))?;
    }
    Ok("M = 0..=12".into())
}

fn criterion_6() -> Check {
    for n in 1..=10 {
        ensure(recursion_identity_check(n), || format!("n = {n}: exact sides differ"))?;
        // numeric oracle: integrate the left-hand side by quadrature
        let deriv = laguerre(n).scale_arg(&int(2)).derivative().to_f64_coeffs();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let integrand = |z: f64| sign * horner(&deriv, z) * (-z).exp();
        for x in [0.0, 0.7, 3.0] {
            let lhs = integrate(integrand, x, 80.0, 1e-12, 64, 1 << 14).value;
            let rhs: f64 = (0..n)
                .map(|i| {
                    let s = if i % 2 == 0 { 2.0 } else { -2.0 };
                    s * laguerre(i).eval_f64(2.0 * x) * (-x).exp()
                })
                .sum();
            ensure((lhs - rhs).abs() < 1e-8, || format!("n = {n}, x = {x}: {lhs} vs {rhs}"))?;
        }
        // the recursion mixture is a normalized profile
        let total = mixture_from_recursion(n).func().total_integral();
        ensure(total.is_one(), || format!("n = {n}: recursion mixture integrates to {total}"))?;
    }
    Ok("n = 1..=10 exact, quadrature agrees to 1e-8".into())
}

fn horner(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, k| acc * z + k)
}

fn criterion_7() -> Check {
    let cfg = GridConfig::entropy();
    let h0 = wigner_entropy(&RadialProfile::vacuum(), &cfg).map_err(|e| e.to_string())?;
    // −∫ e^(−z) ln e^(−z) dz = 1
    let expect0 = 1.0 + PI.ln();
    ensure((h0 - expect0).abs() < 1e-6, || format!("vacuum {h0} vs {expect0}"))?;
    let mix = mixture_radial(&FockMixture::new([(0, ratio(1, 2)), (1, ratio(1, 2))]).unwrap());
    let h1 = wigner_entropy(&mix, &cfg).map_err(|e| e.to_string())?;
    // f = z e^(−z): −∫ f ln f = −∫ z e^(−z) ln z + ∫ z² e^(−z) = (γ − 1) + 2
    let expect1 = 1.0 + EULER_GAMMA + PI.ln();
    ensure((h1 - expect1).abs() < 1e-6, || format!("mixture {h1} vs {expect1}"))?;
    ensure(h0 < h1, || "vacuum entropy not smaller".into())?;
    Ok(format!("H(vacuum) = {h0:.9}, H(mixture) = {h1:.9}"))
}

fn random_mixture(rng: &mut ChaCha8Rng) -> FockMixture {
    let degree = rng.random_range(1..=10usize);
    let mut weights: Vec<u32> = (0..=degree).map(|_| rng.random_range(0..=100)).collect();
    if weights.iter().all(|&w| w == 0) {
        weights[0] = 1;
    }
    let total: u32 = weights.iter().sum();
    FockMixture::new(
        weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(n, &w)| (n, BigRational::new(BigInt::from(w), BigInt::from(total)))),
    )
    .unwrap()
}

fn criterion_8() -> Check {
    let vac = RadialProfile::vacuum();
    let cfg = GridConfig::default();
    for m in 0..=10 {
        let f = mixture_radial(&FockMixture::uniform(m + 1));
        let v = majorizes_continuous(&vac, &f, &cfg).map_err(|e| format!("M = {m}: {e}"))?;
        ensure(v.holds, || format!("M = {m}: {v:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut accepted, mut attempts) = (0, 0);
    while accepted < 50 {
        attempts += 1;
        ensure(attempts <= 200_000, || format!("only {accepted} nonnegative mixtures found"))?;
        let mix = random_mixture(&mut rng);
        let f = mixture_radial(&mix);
        if !certify_nonnegative(&f).nonneg {
            continue;
        }
        accepted += 1;
        let v = majorizes_continuous(&vac, &f, &cfg).map_err(|e| format!("{mix:?}: {e}"))?;
        ensure(v.holds, || format!("{mix:?}: {v:?}"))?;
    }
    Ok(format!("11 uniform mixtures and 50 random ones ({attempts} draws)"))
}

fn criterion_9() -> Check {
    let mix = FockMixture::new([(0, ratio(1, 2)), (1, ratio(1, 2))]).unwrap();
    let c = vacuum_decomposition(&mixture_radial(&mix)).c;
    let schedule = [(int(30), 64), (int(30), 128), (int(30), 256)];
    let report = verify_theorem2_convergence(&c, &schedule).map_err(|e| e.to_string())?;
    for level in &report.levels {
        ensure(level.status == LevelStatus::Holds, || format!("N = {}: {:?}", level.n, level.status))?;
        let held = level.verdict.as_ref().is_some_and(|v| v.holds);
        ensure(held, || format!("N = {}: e0 does not majorize G", level.n))?;
    }
    let errors: Vec<f64> = report.levels.iter().map(|l| l.error_metric).collect();
    let k = errors.len();
    ensure(errors[k - 1] <= errors[k - 2] + 1e-13, || format!("error metric {errors:?}"))?;
    let w = report.witness.as_ref().ok_or("no witness")?;
    ensure(w.doubly_stochastic, || format!("witness {w:?}"))?;
    ensure(w.max_row_deviation <= 1e-12 && w.max_col_deviation <= 1e-12 && w.min_entry >= -1e-12, || {
        format!("witness {w:?}")
    })?;
    Ok(format!("error metric {:.3e} -> {:.3e}, witness dim {}", errors[k - 2], errors[k - 1], w.dim))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.random_range(-50..=50i64)), BigInt::from(rng.random_range(1..=12i64)))
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..500 {
        let degree = rng.random_range(0..=6usize);
        let poly = Poly::new((0..=degree).map(|_| random_rational(&mut rng)).collect());
        let f = PolyExpFn::new(random_rational(&mut rng), poly);
        let g = f.convolve_exp();
        let back = g.deconvolve_exp().map_err(|e| format!("case {case}: {e}"))?;
        ensure(back == f, || format!("case {case}: round trip lost {f:?}"))?;
        ensure(g.total_integral() == f.total_integral(), || format!("case {case}: total changed"))?;
    }
    for case in 0..200 {
        let n = rng.random_range(2..=12usize);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        // y = D x for a random product of T-transforms, so x ≻ y
        let mut y = x.clone();
        for _ in 0..rng.random_range(1..=3 * n) {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            let t: f64 = rng.random_range(0.0..1.0);
            let (yi, yj) = (y[i], y[j]);
            y[i] = t * yi + (1.0 - t) * yj;
            y[j] = (1.0 - t) * yi + t * yj;
        }
        let seq = robin_hood_decompose(&x, &y).map_err(|e| format!("case {case}: {e}"))?;
        let image = seq.witness.mul_vec(&x);
        let residual = image.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        ensure(residual <= 1e-12, || format!("case {case}: residual {residual:e}"))?;
        ensure(is_doubly_stochastic(&seq.witness, 1e-12), || format!("case {case}: not doubly stochastic"))?;
    }
    Ok("500 round trips, 200 witnesses".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "vacuum majorizes the one-photon mixture", criterion_1, Duration::from_secs(2)),
        (2, "N = 3 vertex table", criterion_2, Duration::from_secs(1)),
        (3, "N = 7 construction steps", criterion_3, Duration::from_secs(1)),
        (4, "discrete theorem Monte Carlo", criterion_4, Duration::from_secs(60)),
        (5, "equal-mixture identity", criterion_5, Duration::from_secs(30)),
        (6, "recursion identity", criterion_6, Duration::from_secs(5)),
        (7, "entropy values", criterion_7, Duration::from_secs(60)),
        (8, "vacuum majorizes nonnegative mixtures", criterion_8, Duration::from_secs(300)),
        (9, "continuous theorem convergence", criterion_9, Duration::from_secs(120)),
        (10, "round trips and witnesses", criterion_10, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {}: {name} ({:.2}s / {}s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
