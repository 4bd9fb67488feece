//! Sturm sequences over the rationals and real root isolation by bisection.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{int, ratio, Poly};

#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Poly>,
}

/// An interval `(lo, hi]` holding exactly one distinct root, or the exact
/// root when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

fn sign(q: &BigRational) -> Ordering {
    q.cmp(&BigRational::zero())
}

fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

impl SturmSequence {
    /// Panics on the zero polynomial.
    pub fn new(p: &Poly) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let mut seq = vec![p.normalize_positive()];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(d.normalize_positive());
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push((-r).normalize_positive());
        }
        // dividing out gcd(p, p′) keeps counts right at multiple roots
        let g = seq.last().unwrap().clone();
        if g.degree().unwrap_or(0) > 0 {
            seq = seq.iter().map(|q| q.div_rem(&g).0.normalize_positive()).collect();
        }
        SturmSequence { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sign_changes_at(&self, x: &BigRational) -> usize {
        count_changes(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn sign_changes_at_pos_infinity(&self) -> usize {
        count_changes(self.seq.iter().map(|p| sign(p.leading().unwrap())))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        self.sign_changes_at(a).saturating_sub(self.sign_changes_at(b))
    }

    /// Number of distinct real roots in `(a, ∞)`.
    pub fn count_roots_above(&self, a: &BigRational) -> usize {
        self.sign_changes_at(a).saturating_sub(self.sign_changes_at_pos_infinity())
    }
}

/// Cauchy bound `1 + max |a_i / a_n|`; every real root has absolute value
/// strictly below it.
pub fn cauchy_bound(p: &Poly) -> BigRational {
    let lead = p.leading().expect("root bound of the zero polynomial").abs();
    let d = p.degree().unwrap();
    let max = p.coeffs()[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(BigRational::zero);
    max + BigRational::one()
}

/// Isolates every distinct real root of `p` in `(a, b]`, in increasing order.
pub fn isolate_roots(p: &Poly, a: &BigRational, b: &BigRational) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = SturmSequence::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone(), sturm.count_roots(a, b))];
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => {
                if p.eval(&hi).is_zero() {
                    out.push(RootInterval { lo: hi.clone(), hi });
                } else {
                    out.push(RootInterval { lo, hi });
                }
            }
            _ => {
                let mid = (&lo + &hi) * ratio(1, 2);
                let left = sturm.count_roots(&lo, &mid);
                // right half first so that the stack pops left halves first
                stack.push((mid.clone(), hi, count - left));
                stack.push((lo, mid, left));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// All distinct roots of `p` in `(0, ∞)`.
pub fn isolate_positive_roots(p: &Poly) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    isolate_roots(p, &BigRational::zero(), &cauchy_bound(p))
}

/// Shrinks an isolating interval by bisection until its width is at most
/// `width`, or the root is hit exactly.
pub fn refine(p: &Poly, interval: &RootInterval, width: &BigRational) -> RootInterval {
    let mut lo = interval.lo.clone();
    let mut hi = interval.hi.clone();
    if lo == hi {
        return interval.clone();
    }
    if p.eval(&hi).is_zero() {
        return RootInterval { lo: hi.clone(), hi };
    }
    // A single simple-or-multiple root in (lo, hi]. Use a Sturm count rather
    // than a sign test so that even-multiplicity roots are tracked too.
    let sturm = SturmSequence::new(p);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) * ratio(1, 2);
        if p.eval(&mid).is_zero() {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if sturm.count_roots(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootInterval { lo, hi }
}

/// A rational point strictly between two consecutive isolating intervals,
/// or past the last one.
pub(crate) fn gap_point(left: Option<&RootInterval>, right: Option<&RootInterval>) -> BigRational {
    match (left, right) {
        (None, None) => int(1),
        (None, Some(r)) => r.lo.clone() * ratio(1, 2),
        (Some(l), None) => &l.hi + int(1),
        (Some(l), Some(r)) => (&l.hi + &r.lo) * ratio(1, 2),
    }
}
