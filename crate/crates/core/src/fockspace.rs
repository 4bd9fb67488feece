//! Radial Wigner profiles of Fock states and their finite mixtures.
//!
//! Profiles use the variable `z = r²` and absorb the phase-space factor `π`:
//! a profile stores `f(z) = π·W(r²)`, so the vacuum is exactly `e^(−z)` and
//! `∫₀^∞ f(z) dz = ∫∫ W dx dp = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{int, laguerre, ratio, Poly};
use crate::polyexp::{tail_poly, FloatPolyExp, PolyExpFn};
use crate::sturm::{gap_point, isolate_positive_roots, refine, RootInterval, SturmSequence};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("mixture weight for |{index}⟩ is negative ({weight})")]
    NegativeWeight { index: usize, weight: BigRational },
    #[error("mixture weights sum to {0}, not 1")]
    NotNormalized(BigRational),
    #[error("profile integrates to {0}, not 1")]
    ProfileNotNormalized(BigRational),
    #[error("a radial profile cannot carry a Dirac part")]
    DiracInProfile,
}

/// Finite convex combination of Fock states, keyed by photon number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockMixture {
    weights: BTreeMap<usize, BigRational>,
}

impl FockMixture {
    pub fn new<I>(weights: I) -> Result<Self, FockError>
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let mut map: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (index, weight) in weights {
            if weight.is_negative() {
                return Err(FockError::NegativeWeight { index, weight });
            }
            *map.entry(index).or_insert_with(BigRational::zero) += weight;
        }
        map.retain(|_, w| !w.is_zero());
        let total: BigRational = map.values().sum();
        if !total.is_one() {
            return Err(FockError::NotNormalized(total));
        }
        Ok(FockMixture { weights: map })
    }

    pub fn vacuum() -> Self {
        Self::fock(0)
    }

    pub fn fock(n: usize) -> Self {
        FockMixture { weights: BTreeMap::from([(n, BigRational::one())]) }
    }

    /// Equal weights on `|0⟩ … |count−1⟩`.
    pub fn uniform(count: usize) -> Self {
        assert!(count > 0, "uniform mixture needs at least one state");
        let w = ratio(1, count as i64);
        FockMixture { weights: (0..count).map(|n| (n, w.clone())).collect() }
    }

    pub fn weights(&self) -> &BTreeMap<usize, BigRational> {
        &self.weights
    }

    pub fn weight(&self, n: usize) -> BigRational {
        self.weights.get(&n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn max_index(&self) -> usize {
        *self.weights.keys().next_back().unwrap()
    }
}

impl fmt::Display for FockMixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|(n, w)| format!("{n}:{w}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Normalized radial profile `P(z)·e^(−z)` of a (possibly non-physical)
/// Wigner function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialProfile {
    func: PolyExpFn,
}

impl RadialProfile {
    pub fn try_new(func: PolyExpFn) -> Result<Self, FockError> {
        if !func.is_dirac_free() {
            return Err(FockError::DiracInProfile);
        }
        let total = func.total_integral();
        if !total.is_one() {
            return Err(FockError::ProfileNotNormalized(total));
        }
        Ok(RadialProfile { func })
    }

    pub fn from_poly(poly: Poly) -> Result<Self, FockError> {
        Self::try_new(PolyExpFn::from_poly(poly))
    }

    pub fn vacuum() -> Self {
        fock_radial(0)
    }

    pub fn func(&self) -> &PolyExpFn {
        &self.func
    }

    pub fn poly(&self) -> &Poly {
        self.func.poly()
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.func.to_float().value(z)
    }

    pub fn to_float(&self) -> FloatPolyExp {
        self.func.to_float()
    }
}

/// `(−1)^n L_n(2z) e^(−z)`.
pub fn fock_radial(n: usize) -> RadialProfile {
    let mut poly = laguerre(n).scale_arg(&int(2));
    if n % 2 == 1 {
        poly = -poly;
    }
    RadialProfile { func: PolyExpFn::from_poly(poly) }
}

pub fn mixture_radial(mix: &FockMixture) -> RadialProfile {
    let poly = mix
        .weights()
        .iter()
        .fold(Poly::zero(), |acc, (&n, w)| acc + fock_radial(n).poly().scale(w));
    RadialProfile { func: PolyExpFn::from_poly(poly) }
}

/// `(1/n) Σ_{i<n} fock_radial(i)`: the equal-weight mixture of the first `n`
/// Fock states, to which the Laguerre recursion's right-hand side is
/// proportional.
pub fn mixture_from_recursion(n: usize) -> RadialProfile {
    assert!(n >= 1, "recursion mixture needs n >= 1");
    mixture_radial(&FockMixture::uniform(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub hi: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonnegWitness {
    /// No sign change on `(0, ∞)`. `roots` are the isolated roots found
    /// (all of even multiplicity), `zero_multiplicity` the order of the root
    /// at the origin.
    NoSignChange {
        sturm_changes_at_zero: usize,
        sturm_changes_at_infinity: usize,
        zero_multiplicity: usize,
        roots: Vec<RootInterval>,
    },
    /// The polynomial is strictly negative on the open `interval`, in
    /// particular at `point`.
    Negative { interval: Interval, point: BigRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegCertificate {
    pub nonneg: bool,
    pub witness: NonnegWitness,
}

/// Decides exactly whether `p(z) ≥ 0` for all `z ≥ 0`.
pub fn certify_poly_nonnegative(p: &Poly) -> NonnegCertificate {
    let empty = |changes: (usize, usize), k: usize, roots: Vec<RootInterval>| NonnegCertificate {
        nonneg: true,
        witness: NonnegWitness::NoSignChange {
            sturm_changes_at_zero: changes.0,
            sturm_changes_at_infinity: changes.1,
            zero_multiplicity: k,
            roots,
        },
    };
    if p.is_zero() {
        return empty((0, 0), 0, Vec::new());
    }
    // z^k ≥ 0 on the half-line, so only the cofactor matters.
    let (k, q) = p.strip_zero_roots();
    let sturm = SturmSequence::new(&q);
    let changes = (
        sturm.sign_changes_at(&BigRational::zero()),
        sturm.sign_changes_at_pos_infinity(),
    );
    let roots = separate(&q, isolate_positive_roots(&q));

    let negative = |lo: BigRational, hi: BigRational| {
        let point = (&lo + &hi) * ratio(1, 2);
        debug_assert!(q.eval(&point).is_negative());
        NonnegCertificate {
            nonneg: false,
            witness: NonnegWitness::Negative { interval: Interval { lo, hi }, point },
        }
    };

    // q(0) ≠ 0 after stripping, so its sign holds up to the first root.
    if q.coeff(0).is_negative() {
        let hi = roots.first().map_or_else(|| int(1), |r| r.lo.clone());
        return negative(BigRational::zero(), hi);
    }
    for pair in roots.windows(2) {
        let x = gap_point(Some(&pair[0]), Some(&pair[1]));
        if q.eval(&x).is_negative() {
            return negative(pair[0].hi.clone(), pair[1].lo.clone());
        }
    }
    if let Some(last) = roots.last() {
        let x = gap_point(Some(last), None);
        if q.eval(&x).is_negative() {
            let hi = &x + int(1);
            return negative(last.hi.clone(), hi);
        }
    }
    empty(changes, k, roots)
}

/// Refines isolating intervals until they are pairwise separated by open gaps
/// and bounded away from zero.
fn separate(q: &Poly, mut roots: Vec<RootInterval>) -> Vec<RootInterval> {
    loop {
        let mut touched = None;
        for i in 0..roots.len() {
            let r = &roots[i];
            if r.is_exact() {
                continue;
            }
            let below = if i == 0 { BigRational::zero() } else { roots[i - 1].hi.clone() };
            let above = roots.get(i + 1).map(|n| n.lo.clone());
            if r.lo <= below || above.is_some_and(|a| r.hi >= a) {
                touched = Some(i);
                break;
            }
        }
        match touched {
            None => return roots,
            Some(i) => {
                let half = (&roots[i].hi - &roots[i].lo) * ratio(1, 2);
                roots[i] = refine(q, &roots[i], &half);
            }
        }
    }
}

pub fn certify_nonnegative(p: &RadialProfile) -> NonnegCertificate {
    certify_poly_nonnegative(p.poly())
}

/// The profile written as `c ∗ e^(−z)` together with the two entry
/// conditions of the continuous convolution theorem.
#[derive(Clone, Debug)]
pub struct VacuumDecomposition {
    pub c: PolyExpFn,
    /// `∫₀^∞ c`, exact.
    pub total: BigRational,
    /// `R` with `∫ₓ^∞ c = R(x) e^(−x)` for `x > 0`.
    pub tail: Poly,
    pub tail_certificate: NonnegCertificate,
}

impl VacuumDecomposition {
    pub fn total_is_one(&self) -> bool {
        self.total.is_one()
    }

    pub fn tail_nonnegative(&self) -> bool {
        self.tail_certificate.nonneg
    }

    pub fn entry_conditions_hold(&self) -> bool {
        self.total_is_one() && self.tail_nonnegative()
    }
}

pub fn vacuum_decomposition(p: &RadialProfile) -> VacuumDecomposition {
    let c = p.func().deconvolve_exp().expect("radial profiles are Dirac-free");
    decomposition_of(c)
}

/// Entry-condition analysis of an arbitrary generalized function `c`.
pub fn decomposition_of(c: PolyExpFn) -> VacuumDecomposition {
    let total = c.total_integral();
    let tail = tail_poly(c.poly());
    let tail_certificate = certify_poly_nonnegative(&tail);
    VacuumDecomposition { c, total, tail, tail_certificate }
}

/// Both sides of `∫ₓ^∞ (−1)^n d/dz[L_n(2z)] e^(−z) dz = 2 Σ_{i<n} (−1)^i L_i(2x) e^(−x)`
/// as the polynomial factors multiplying `e^(−x)`.
pub fn recursion_sides(n: usize) -> (Poly, Poly) {
    assert!(n >= 1, "recursion identity needs n >= 1");
    let mut integrand = laguerre(n).scale_arg(&int(2)).derivative();
    if n % 2 == 1 {
        integrand = -integrand;
    }
    let lhs = tail_poly(&integrand);
    let rhs = (0..n).fold(Poly::zero(), |acc, i| {
        let term = laguerre(i).scale_arg(&int(2)).scale(&int(2));
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    (lhs, rhs)
}

pub fn recursion_identity_check(n: usize) -> bool {
    let (lhs, rhs) = recursion_sides(n);
    lhs == rhs
}
