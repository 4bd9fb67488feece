mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::exact_majorizes;
use phasemaj::majorize::{is_doubly_stochastic, majorizes_exact};
use phasemaj::polyexp::tail_poly;
use phasemaj::theorems::{
    build_v0, build_vk_uk, convolution_g, convolution_g_toeplitz, g_from_lambdas, lemma1_decompose, lemma1_vector,
    Theorem1Instance,
};
use phasemaj::{
    certify_nonnegative, majorizes_discrete, mixture_radial, robin_hood_decompose, FockMixture, Poly, PolyExpFn,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-60i64..=60, 1i64..=16).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 1..=max_degree + 1).prop_map(Poly::new)
}

fn ratio_in_unit() -> impl Strategy<Value = BigRational> {
    (1i64..=15, 16i64..=16).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn nonneg_vec(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn convolution_round_trip(w in rational(), p in poly(7)) {
        let f = PolyExpFn::new(w, p);
        let g = f.convolve_exp();
        prop_assert!(g.is_dirac_free());
        prop_assert_eq!(g.deconvolve_exp().unwrap(), f.clone());
        prop_assert_eq!(g.total_integral(), f.total_integral());
    }

    #[test]
    fn tail_polynomial_satisfies_its_ode(p in poly(8)) {
        // ∫ₓ^∞ P e^(−z) = R(x) e^(−x) means R′ − R = −P
        let r = tail_poly(&p);
        prop_assert_eq!(&r.derivative() - &r, -&p);
    }

    #[test]
    fn toeplitz_matches_direct(n in 1usize..=8, a in ratio_in_unit(), seed in prop::collection::vec(rational(), 8)) {
        let lambdas: Vec<BigRational> = seed.into_iter().take(n).map(|l| l.abs()).collect();
        let inst = Theorem1Instance::new(n, a.clone(), lambdas.clone()).unwrap();
        let direct = convolution_g(&inst);
        prop_assert_eq!(&direct, &convolution_g_toeplitz(&inst));
        prop_assert_eq!(&direct, &g_from_lambdas(n, &a, &lambdas));
    }

    #[test]
    fn lemma1_round_trip(seed in prop::collection::vec(rational(), 1..=8)) {
        let lambdas: Vec<BigRational> = seed.into_iter().map(|l| l.abs()).collect();
        let x = lemma1_vector(&lambdas);
        let back = lemma1_decompose(&x).unwrap();
        prop_assert!(back.total().is_one());
        prop_assert_eq!(&back.lambdas[1..], &lambdas[..]);
        prop_assert_eq!(back.reconstruct(), x);
    }

    #[test]
    fn cone_directions_conserve_mass(n in 1usize..=8, a in ratio_in_unit()) {
        let total: BigRational = build_v0(n, &a).iter().sum();
        for k in 1..=n {
            let col = build_vk_uk(n, &a, k);
            prop_assert_eq!(col.len(), 2 * n);
            prop_assert!(col.iter().sum::<BigRational>().is_zero());
        }
        prop_assert!(total.is_positive());
    }
}

/// Nonnegativity on a dense sample grid; may miss a thin negative dip but
/// never reports a sampled negative value as nonnegative.
fn sampled_nonneg(p: &Poly) -> bool {
    let c = p.to_f64_coeffs();
    let scale: f64 = c.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
    (0..10_000).all(|i| {
        let z = i as f64 * 0.005;
        c.iter().rev().fold(0.0, |acc, k| acc * z + k) >= -1e-9 * scale * (1.0 + z).powi(c.len() as i32)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn certificate_agrees_with_sampling(weights in prop::collection::vec(0u32..=20, 1..=8)) {
        prop_assume!(weights.iter().any(|&w| w > 0));
        let total: u32 = weights.iter().sum();
        let mix = FockMixture::new(weights.iter().enumerate().filter(|(_, &w)| w > 0).map(|(n, &w)| {
            (n, BigRational::new(BigInt::from(w), BigInt::from(total)))
        })).unwrap();
        let f = mixture_radial(&mix);
        let cert = certify_nonnegative(&f);
        let sampled = sampled_nonneg(f.poly());
        if cert.nonneg {
            prop_assert!(sampled, "certified but sampled negative: {:?}", mix);
        } else if let phasemaj::fockspace::NonnegWitness::Negative { point, .. } = &cert.witness {
            prop_assert!(f.poly().eval(point).is_negative());
        } else {
            prop_assert!(false, "negative verdict without a witness point");
        }
    }

    #[test]
    fn robin_hood_witness(x in nonneg_vec(10), mix in prop::collection::vec((0usize..10, 0usize..10, 0.0f64..1.0), 1..20)) {
        let mut y = x.clone();
        for (i, j, t) in mix {
            let (yi, yj) = (y[i], y[j]);
            y[i] = t * yi + (1.0 - t) * yj;
            y[j] = (1.0 - t) * yi + t * yj;
        }
        let seq = robin_hood_decompose(&x, &y).unwrap();
        let image = seq.witness.mul_vec(&x);
        for (a, b) in image.iter().zip(&y) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        prop_assert!(is_doubly_stochastic(&seq.witness, 1e-12));
    }

    #[test]
    fn discrete_majorization_is_transitive(x in nonneg_vec(6), t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        // x ≻ y ≻ z through two averaging steps
        let mean = x.iter().sum::<f64>() / 6.0;
        let y: Vec<f64> = x.iter().map(|v| t1 * v + (1.0 - t1) * mean).collect();
        let z: Vec<f64> = y.iter().map(|v| t2 * v + (1.0 - t2) * mean).collect();
        let tol = 1e-12;
        prop_assert!(majorizes_discrete(&x, &y, tol).holds);
        prop_assert!(majorizes_discrete(&y, &z, tol).holds);
        prop_assert!(majorizes_discrete(&x, &z, tol).holds);
    }

    #[test]
    fn schur_convex_sums_respect_majorization(x in nonneg_vec(8), mix in prop::collection::vec((0usize..8, 0usize..8, 0.0f64..1.0), 1..12)) {
        let mut y = x.clone();
        for (i, j, t) in mix {
            let (yi, yj) = (y[i], y[j]);
            y[i] = t * yi + (1.0 - t) * yj;
            y[j] = (1.0 - t) * yi + t * yj;
        }
        let sum_sq = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
        prop_assert!(sum_sq(&x) >= sum_sq(&y) - 1e-12);
    }

    #[test]
    fn exact_verdict_matches_oracle(x in prop::collection::vec(0i64..20, 1..8), y in prop::collection::vec(0i64..20, 1..8)) {
        let to_q = |v: &[i64]| v.iter().map(|&k| BigRational::from_integer(BigInt::from(k))).collect::<Vec<_>>();
        let (xq, yq) = (to_q(&x), to_q(&y));
        prop_assert_eq!(majorizes_exact(&xq, &yq).holds, exact_majorizes(&xq, &yq));
    }
}
