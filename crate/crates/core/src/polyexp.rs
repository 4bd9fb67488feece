//! Generalized functions `w·δ(z) + P(z)·e^(−z)` on the half-line `[0, ∞)`.
//!
//! The key identity is that convolving with the unit exponential maps the
//! Erlang family into itself: `δ ∗ e^(−z) = e^(−z)` and
//! `(p′ e^(−z)) ∗ e^(−z) = p e^(−z)` whenever `p(0) = 0`. Both directions are
//! exact operations on the coefficient lists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::{horner, to_f64, Poly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyExpError {
    #[error("function has a Dirac part of weight {0} and cannot be deconvolved")]
    NonZeroDirac(BigRational),
    #[error("point evaluation at z = 0 is undefined with a Dirac weight of {0}")]
    DiracAtPoint(BigRational),
    #[error("evaluation point {0} lies outside [0, ∞)")]
    OutsideDomain(f64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyExpFn {
    dirac_weight: BigRational,
    poly: Poly,
}

/// Exact representation of `∫ₓ^∞ f = R(x)·e^(−x) + [x = 0]·w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailIntegral {
    pub r: Poly,
    pub include_dirac: bool,
    pub dirac_weight: BigRational,
}

impl TailIntegral {
    /// The tail integral evaluated in floating point at `x`.
    pub fn value_f64(&self, x: f64) -> f64 {
        let dirac = if self.include_dirac { to_f64(&self.dirac_weight) } else { 0.0 };
        dirac + self.r.eval_f64(x) * (-x).exp()
    }
}

impl PolyExpFn {
    pub fn new(dirac_weight: BigRational, poly: Poly) -> Self {
        PolyExpFn { dirac_weight, poly }
    }

    /// `P(z)·e^(−z)` with no Dirac part.
    pub fn from_poly(poly: Poly) -> Self {
        PolyExpFn { dirac_weight: BigRational::zero(), poly }
    }

    /// `w·δ(z)`.
    pub fn dirac(weight: BigRational) -> Self {
        PolyExpFn { dirac_weight: weight, poly: Poly::zero() }
    }

    pub fn dirac_weight(&self) -> &BigRational {
        &self.dirac_weight
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_dirac_free(&self) -> bool {
        self.dirac_weight.is_zero()
    }

    /// `f ∗ e^(−z)`; the result is always Dirac-free.
    pub fn convolve_exp(&self) -> PolyExpFn {
        let mut poly = self.poly.antiderivative();
        poly = &poly + &Poly::constant(self.dirac_weight.clone());
        PolyExpFn::from_poly(poly)
    }

    /// Inverse of [`convolve_exp`](Self::convolve_exp): the generalized
    /// function `c = P(0)·δ + P′·e^(−z)` with `c ∗ e^(−z) = P·e^(−z)`.
    pub fn deconvolve_exp(&self) -> Result<PolyExpFn, PolyExpError> {
        if !self.is_dirac_free() {
            return Err(PolyExpError::NonZeroDirac(self.dirac_weight.clone()));
        }
        Ok(PolyExpFn::new(self.poly.coeff(0), self.poly.derivative()))
    }

    /// `∫ₓ^∞ f(z) dz` as `R(x)·e^(−x)` with `R = Σ_j P^(j)`, plus the Dirac
    /// weight when `x = 0`.
    pub fn tail_integral(&self, x: &BigRational) -> TailIntegral {
        assert!(!x.is_negative(), "tail integral requires x >= 0");
        TailIntegral {
            r: tail_poly(&self.poly),
            include_dirac: x.is_zero(),
            dirac_weight: self.dirac_weight.clone(),
        }
    }

    /// `∫₀^∞ f`, exact.
    pub fn total_integral(&self) -> BigRational {
        // ∫ z^i e^(−z) = i!
        let mut fact = BigInt::from(1);
        let mut total = self.dirac_weight.clone();
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            if i > 0 {
                fact *= BigInt::from(i);
            }
            total += c * &fact;
        }
        total
    }

    pub fn eval(&self, z: f64) -> Result<f64, PolyExpError> {
        if z < 0.0 || z.is_nan() {
            return Err(PolyExpError::OutsideDomain(z));
        }
        if z == 0.0 && !self.is_dirac_free() {
            return Err(PolyExpError::DiracAtPoint(self.dirac_weight.clone()));
        }
        Ok(self.poly.eval_f64(z) * (-z).exp())
    }

    pub fn scale(&self, c: &BigRational) -> PolyExpFn {
        PolyExpFn::new(&self.dirac_weight * c, self.poly.scale(c))
    }

    pub fn add(&self, other: &PolyExpFn) -> PolyExpFn {
        PolyExpFn::new(&self.dirac_weight + &other.dirac_weight, &self.poly + &other.poly)
    }

    /// Floating-point view used by the grid and quadrature layers.
    pub fn to_float(&self) -> FloatPolyExp {
        FloatPolyExp {
            dirac: to_f64(&self.dirac_weight),
            poly: self.poly.to_f64_coeffs(),
            tail: tail_poly(&self.poly).to_f64_coeffs(),
            abs_tail: tail_poly(&self.poly.abs_coeffs()).to_f64_coeffs(),
        }
    }
}

/// `R = Σ_j P^(j)`, so that `∫ₓ^∞ P e^(−z) dz = R(x) e^(−x)`.
pub fn tail_poly(p: &Poly) -> Poly {
    tail_poly_rate(p, &BigRational::from_integer(1.into()))
}

/// `R = Σ_j P^(j) / c^(j+1)`, so that `∫ₓ^∞ P e^(−cz) dz = R(x) e^(−cx)`.
pub fn tail_poly_rate(p: &Poly, rate: &BigRational) -> Poly {
    let mut acc = Poly::zero();
    let mut term = p.clone();
    let inv = rate.recip();
    let mut factor = inv.clone();
    while !term.is_zero() {
        acc = &acc + &term.scale(&factor);
        term = term.derivative();
        factor *= &inv;
    }
    acc
}

/// Cached `f64` coefficients of a [`PolyExpFn`].
#[derive(Clone, Debug)]
pub struct FloatPolyExp {
    pub dirac: f64,
    pub poly: Vec<f64>,
    pub tail: Vec<f64>,
    abs_tail: Vec<f64>,
}

impl FloatPolyExp {
    /// Regular part `P(z) e^(−z)`.
    pub fn value(&self, z: f64) -> f64 {
        horner(&self.poly, z) * (-z).exp()
    }

    /// `∫ₓ^∞` of the regular part.
    pub fn tail(&self, x: f64) -> f64 {
        horner(&self.tail, x) * (-x).exp()
    }

    /// Integral of the regular part over `[a, b]`.
    pub fn mass(&self, a: f64, b: f64) -> f64 {
        self.tail(a) - self.tail(b)
    }

    /// Upper bound on `∫ₓ^∞ |P(z)| e^(−z) dz`.
    pub fn abs_tail_bound(&self, x: f64) -> f64 {
        horner(&self.abs_tail, x.max(0.0)) * (-x).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, ratio};

    #[test]
    fn convolve_examples() {
        let delta = PolyExpFn::dirac(int(1));
        assert_eq!(delta.convolve_exp(), PolyExpFn::from_poly(Poly::from_ints(&[1])));
        let exp = PolyExpFn::from_poly(Poly::from_ints(&[1]));
        assert_eq!(exp.convolve_exp(), PolyExpFn::from_poly(Poly::from_ints(&[0, 1])));
    }

    #[test]
    fn deconvolve_examples() {
        let erlang2 = PolyExpFn::from_poly(Poly::from_ints(&[0, 1]));
        assert_eq!(erlang2.deconvolve_exp().unwrap(), PolyExpFn::from_poly(Poly::from_ints(&[1])));
        let exp = PolyExpFn::from_poly(Poly::from_ints(&[1]));
        assert_eq!(exp.deconvolve_exp().unwrap(), PolyExpFn::dirac(int(1)));
        let w1 = PolyExpFn::from_poly(Poly::from_ints(&[-1, 2]));
        let c = w1.deconvolve_exp().unwrap();
        assert_eq!(c, PolyExpFn::new(int(-1), Poly::from_ints(&[2])));
        assert_eq!(c.convolve_exp(), w1);
    }

    #[test]
    fn deconvolve_rejects_dirac() {
        let f = PolyExpFn::new(ratio(1, 3), Poly::from_ints(&[1]));
        assert_eq!(f.deconvolve_exp(), Err(PolyExpError::NonZeroDirac(ratio(1, 3))));
    }

    #[test]
    fn tail_integral_examples() {
        let exp = PolyExpFn::from_poly(Poly::from_ints(&[1]));
        let t = exp.tail_integral(&int(0));
        assert_eq!(t.r, Poly::from_ints(&[1]));
        assert_eq!(exp.total_integral(), int(1));

        let erlang2 = PolyExpFn::from_poly(Poly::from_ints(&[0, 1]));
        assert_eq!(erlang2.tail_integral(&ratio(3, 2)).r, Poly::from_ints(&[1, 1]));

        let delta = PolyExpFn::dirac(int(1));
        let t = delta.tail_integral(&ratio(1, 2));
        assert!(!t.include_dirac);
        assert_eq!(t.value_f64(0.5), 0.0);
        assert_eq!(delta.tail_integral(&int(0)).value_f64(0.0), 1.0);
    }

    #[test]
    fn tail_poly_satisfies_integration_by_parts() {
        let p = Poly::new(vec![ratio(3, 7), int(-2), int(0), ratio(5, 2)]);
        let r = tail_poly(&p);
        assert_eq!(r.derivative() - &r, -&p);
    }

    #[test]
    fn tail_poly_rate_two() {
        // ∫ₓ^∞ z e^(−2z) dz = (x/2 + 1/4) e^(−2x)
        let r = tail_poly_rate(&Poly::from_ints(&[0, 1]), &int(2));
        assert_eq!(r, Poly::new(vec![ratio(1, 4), ratio(1, 2)]));
    }

    #[test]
    fn eval_examples() {
        let exp = PolyExpFn::from_poly(Poly::from_ints(&[1]));
        assert_eq!(exp.eval(0.0).unwrap(), 1.0);
        let erlang2 = PolyExpFn::from_poly(Poly::from_ints(&[0, 1]));
        assert!((erlang2.eval(1.0).unwrap() - 0.36787944117144233).abs() < 1e-15);
        let w1 = PolyExpFn::from_poly(Poly::from_ints(&[-1, 2]));
        assert_eq!(w1.eval(0.5).unwrap(), 0.0);
        let delta = PolyExpFn::dirac(int(1));
        assert!(matches!(delta.eval(0.0), Err(PolyExpError::DiracAtPoint(_))));
        assert_eq!(delta.eval(0.25).unwrap(), 0.0);
    }

    #[test]
    fn float_mass_matches_exact_total() {
        let f = PolyExpFn::from_poly(Poly::new(vec![ratio(1, 3), ratio(-2, 3), ratio(2, 3)]));
        let fl = f.to_float();
        assert!((fl.mass(0.0, 200.0) - 1.0).abs() < 1e-14);
        assert!(fl.abs_tail_bound(10.0) >= fl.tail(10.0).abs());
    }
}
