#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use phasemaj::Poly;

/// Polynomial in `a` from a word like `"a2-a3"`, `"a0"` or `"0"`.
pub fn pa(s: &str) -> Poly {
    let mut out = Poly::zero();
    let mut sign = 1;
    let mut rest = s.trim();
    if rest == "0" {
        return out;
    }
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('+') {
            sign = 1;
            rest = r;
            continue;
        }
        let r = rest.strip_prefix('a').expect("term starts with a");
        let end = r.find(['+', '-']).unwrap_or(r.len());
        let exp: usize = r[..end].parse().unwrap();
        out = &out + &Poly::monomial(BigRational::from_integer(BigInt::from(sign)), exp);
        rest = &r[end..];
    }
    out
}

pub fn pas(words: &[&str]) -> Vec<Poly> {
    words.iter().map(|w| pa(w)).collect()
}

/// The eight vertices at `N = 3`: index word, `(V, U)` and `λ₁ λ₂ λ₃`.
pub const VERTICES_N3: [(&str, [&str; 6], [&str; 3]); 8] = [
    ("λλλ", ["a0", "a1", "a2", "0", "0", "0"], ["0", "0", "0"]),
    ("000", ["0", "0", "0", "a0", "a1", "a2"], ["a0", "a0", "a0"]),
    ("0λλ", ["0", "a0", "a1", "a2", "0", "0"], ["a0", "0", "0"]),
    ("λ0λ", ["a0", "0", "a1", "a2-a3", "a3", "0"], ["0", "a1", "0"]),
    ("λλ0", ["a0", "a1", "0", "a2-a3", "a3-a4", "a4"], ["0", "0", "a2"]),
    ("λ00", ["a0", "0", "0", "a1-a3", "a2", "a3"], ["0", "a1", "a1"]),
    ("0λ0", ["0", "a0", "0", "a1", "a2-a3", "a3"], ["a0", "0", "a1"]),
    ("00λ", ["0", "0", "a0", "a1", "a2", "0"], ["a0", "a0", "0"]),
];

/// The two construction steps at `N = 7`.
pub const STEPS_N7_FIRST: (&str, [&str; 14]) = (
    "λλ0λλλλ",
    ["a0", "a1", "0", "a2", "a3", "a4", "a5", "a6-a7", "a7-a8", "a8", "0", "0", "0", "0"],
);
pub const STEPS_N7_SECOND: (&str, [&str; 14]) = (
    "λλ0λλ0λ",
    ["a0", "a1", "0", "a2", "a3", "0", "a4", "a5-a7", "a6-a8", "a7", "a8-a9", "a9-a10", "a10", "0"],
);

/// Sort-and-prefix-sum check of `x ≻ y`, kept separate from the library.
pub fn exact_majorizes(x: &[BigRational], y: &[BigRational]) -> bool {
    let n = x.len().max(y.len());
    let desc = |v: &[BigRational]| {
        let mut s = v.to_vec();
        s.resize(n, BigRational::zero());
        s.sort_by(|a, b| b.cmp(a));
        s
    };
    let (xs, ys) = (desc(x), desc(y));
    let (mut sx, mut sy) = (BigRational::zero(), BigRational::zero());
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sx < sy {
            return false;
        }
    }
    sx == sy
}
