use std::f64::consts::{E, PI};

use serde::Serialize;

use super::{GridConfig, MajorizeError};
use crate::fockspace::{certify_nonnegative, RadialProfile};
use crate::poly::{horner, int, ratio, Poly};
use crate::polyexp::tail_poly_rate;
use crate::quadrature::integrate;
use crate::sturm::cauchy_bound;

/// Convex `Φ` with `Φ(0) = 0` for the functional `∫ Φ(f(z)) dz`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ConvexFn {
    Identity,
    /// `x ln x` with `0 ln 0 = 0`; defined for `x ≥ 0` only.
    XLogX,
    Square,
    /// `|x|^p`, convex for `p ≥ 1`.
    AbsPow(f64),
}

impl ConvexFn {
    pub fn apply(&self, x: f64) -> f64 {
        match *self {
            ConvexFn::Identity => x,
            // certified-nonnegative profiles can still round to tiny negatives
            ConvexFn::XLogX => {
                if x > 0.0 {
                    x * x.ln()
                } else {
                    0.0
                }
            }
            ConvexFn::Square => x * x,
            ConvexFn::AbsPow(p) => x.abs().powf(p),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ConvexFn::Identity => "x".into(),
            ConvexFn::XLogX => "x ln x".into(),
            ConvexFn::Square => "x^2".into(),
            ConvexFn::AbsPow(p) => format!("|x|^{p}"),
        }
    }
}

/// Tail bounds for `∫ₓ^∞ |Φ(f)|` given `|f(z)| ≤ A(z) e^(−z)`.
struct TailModel {
    abs: Vec<f64>,
    abs_tail: Vec<f64>,
    half_rate_tail: Vec<f64>,
    decreasing_from: f64,
}

impl TailModel {
    fn new(p: &Poly) -> Self {
        let a = p.abs_coeffs();
        let abs_tail = tail_poly_rate(&a, &int(1));
        let half_rate_tail = tail_poly_rate(&(&a + &Poly::constant(int(1))), &ratio(1, 2));
        // A e^(−z) is decreasing past every root of A′ − A
        let slope = a.derivative() - &a;
        let decreasing_from = match slope.degree() {
            Some(d) if d > 0 => crate::poly::to_f64(&cauchy_bound(&slope)),
            _ => 0.0,
        };
        TailModel {
            abs: a.to_f64_coeffs(),
            abs_tail: abs_tail.to_f64_coeffs(),
            half_rate_tail: half_rate_tail.to_f64_coeffs(),
            decreasing_from,
        }
    }

    fn envelope(&self, z: f64) -> f64 {
        horner(&self.abs, z) * (-z).exp()
    }

    /// `None` when the bound does not apply at `z`.
    fn bound(&self, phi: ConvexFn, z: f64) -> Option<f64> {
        if let ConvexFn::Identity = phi {
            return Some(horner(&self.abs_tail, z) * (-z).exp());
        }
        // the remaining bounds need |f| ≤ 1 on [z, ∞)
        if z < self.decreasing_from || self.envelope(z) > 1.0 / E {
            return None;
        }
        Some(match phi {
            // |x ln x| ≤ (2/e) √x ≤ (2/e)(1 + A) e^(−z/2) for 0 ≤ x ≤ 1
            ConvexFn::XLogX => 2.0 / E * horner(&self.half_rate_tail, z) * (-z / 2.0).exp(),
            _ => horner(&self.abs_tail, z) * (-z).exp(),
        })
    }

    fn z_max(&self, phi: ConvexFn, limit: f64) -> Option<f64> {
        let ok = |z: f64| self.bound(phi, z).is_some_and(|b| b < limit);
        let mut hi = self.decreasing_from.ceil().max(1.0);
        while !ok(hi) {
            hi *= 2.0;
            if hi > 1e5 {
                return None;
            }
        }
        let mut lo = (hi / 2.0).max(self.decreasing_from.ceil());
        if ok(lo) {
            return Some(lo.max(1.0));
        }
        while hi - lo > 1.0 {
            let mid = ((lo + hi) / 2.0).floor();
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

/// `∫₀^∞ Φ(f(z)) dz` by adaptive quadrature on `[0, z_max]`, with `z_max`
/// chosen so that the neglected tail is below `tolerance / 10`.
pub fn convex_functional(f: &RadialProfile, phi: ConvexFn, cfg: &GridConfig) -> Result<f64, MajorizeError> {
    cfg.validate()?;
    if let ConvexFn::AbsPow(p) = phi {
        if p.is_nan() || p < 1.0 {
            return Err(MajorizeError::InvalidGrid(format!("|x|^p is convex only for p >= 1, got {p}")));
        }
    }
    if phi == ConvexFn::XLogX && !certify_nonnegative(f).nonneg {
        return Err(MajorizeError::NegativeInput);
    }
    let model = TailModel::new(f.poly());
    let limit = cfg.tolerance / 10.0;
    let z_max = match cfg.z_max {
        Some(z) => z,
        None => model.z_max(phi, limit).ok_or(MajorizeError::TailTooHeavy {
            z_max: 1e5,
            bound: f64::INFINITY,
            limit,
        })?,
    };
    match model.bound(phi, z_max) {
        Some(b) if b < limit => {}
        b => {
            return Err(MajorizeError::TailTooHeavy { z_max, bound: b.unwrap_or(f64::INFINITY), limit })
        }
    }
    let fl = f.to_float();
    let result = integrate(|z| phi.apply(fl.value(z)), 0.0, z_max, limit, cfg.cells, cfg.cells * 64);
    Ok(result.value)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyParts {
    /// `∫₀^∞ f ln f dz` in the radial convention `f = π W`.
    pub integral_f_ln_f: f64,
    pub ln_pi: f64,
    /// `−∫∫ W ln W dx dp = ln π − ∫ f ln f dz`.
    pub entropy: f64,
}

pub fn wigner_entropy_parts(f: &RadialProfile, cfg: &GridConfig) -> Result<EntropyParts, MajorizeError> {
    let integral_f_ln_f = convex_functional(f, ConvexFn::XLogX, cfg)?;
    let ln_pi = PI.ln();
    Ok(EntropyParts { integral_f_ln_f, ln_pi, entropy: ln_pi - integral_f_ln_f })
}

/// Shannon differential entropy of the Wigner function over phase space.
pub fn wigner_entropy(f: &RadialProfile, cfg: &GridConfig) -> Result<f64, MajorizeError> {
    wigner_entropy_parts(f, cfg).map(|p| p.entropy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::{fock_radial, mixture_radial, FockMixture};

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn identity_gives_normalization() {
        for f in [RadialProfile::vacuum(), fock_radial(3), mixture_radial(&FockMixture::uniform(4))] {
            let v = convex_functional(&f, ConvexFn::Identity, &GridConfig::default()).unwrap();
            assert!((v - 1.0).abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn vacuum_values() {
        let vac = RadialProfile::vacuum();
        let cfg = GridConfig::default();
        let xlogx = convex_functional(&vac, ConvexFn::XLogX, &cfg).unwrap();
        assert!((xlogx + 1.0).abs() < 1e-9);
        let sq = convex_functional(&vac, ConvexFn::Square, &cfg).unwrap();
        assert!((sq - 0.5).abs() < 1e-9);
    }

    #[test]
    fn entropy_values() {
        let cfg = GridConfig::entropy();
        let h0 = wigner_entropy(&RadialProfile::vacuum(), &cfg).unwrap();
        assert!((h0 - (1.0 + PI.ln())).abs() < 1e-6);
        let h = wigner_entropy(&mixture_radial(&FockMixture::uniform(2)), &cfg).unwrap();
        assert!((h - (1.0 + EULER_GAMMA + PI.ln())).abs() < 1e-6);
        assert!(h0 < h);
    }

    #[test]
    fn negative_profile_rejected() {
        assert_eq!(
            wigner_entropy(&fock_radial(1), &GridConfig::entropy()),
            Err(MajorizeError::NegativeInput)
        );
        // |x|^p is fine on signed profiles
        assert!(convex_functional(&fock_radial(1), ConvexFn::AbsPow(1.5), &GridConfig::default()).is_ok());
    }
}
