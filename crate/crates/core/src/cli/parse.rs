//! Exact parsing of command-line values. Floats are rejected wherever the
//! value feeds an exact computation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::fockspace::{FockError, FockMixture};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {input:?} at position {position}: {message}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Mixture(#[from] FockError),
}

fn err(input: &str, position: usize, message: impl Into<String>) -> ParseError {
    ParseError { input: input.to_string(), position, message: message.into() }
}

fn parse_int(input: &str, s: &str, offset: usize, signed: bool) -> Result<BigInt, ParseError> {
    let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
    if digits.is_empty() {
        return Err(err(input, offset, "expected an integer"));
    }
    if let Some(i) = digits.find(|c: char| !c.is_ascii_digit()) {
        let pos = offset + (s.len() - digits.len()) + i;
        let msg = if digits[i..].starts_with(['.', 'e', 'E']) {
            "floating-point values are not accepted; write p/q"
        } else {
            "unexpected character"
        };
        return Err(err(input, pos, msg));
    }
    Ok(s.parse().expect("validated digits"))
}

/// `"p/q"` or an integer, optionally negative; `offset` is the position of
/// `s` inside `input` for error reporting.
fn rational_at(input: &str, s: &str, offset: usize) -> Result<BigRational, ParseError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let p = parse_int(input, num, offset, true)?;
    let q = match den {
        Some(d) => parse_int(input, d, offset + num.len() + 1, false)?,
        None => BigInt::from(1),
    };
    if q.is_zero() {
        return Err(err(input, offset + num.len() + 1, "zero denominator"));
    }
    Ok(BigRational::new(p, q))
}

pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let trimmed = s.trim();
    let offset = s.len() - s.trim_start().len();
    rational_at(s, trimmed, offset)
}

/// Comma-separated items with their byte offsets, whitespace trimmed.
fn items(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    s.split(',').map(move |part| {
        let start = offset + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        (start, part.trim())
    })
}

/// `"n:w,…"` with rational weights summing to 1, or `"vacuum"`.
pub fn parse_mixture(s: &str) -> Result<FockMixture, SpecError> {
    if s.trim() == "vacuum" {
        return Ok(FockMixture::vacuum());
    }
    let mut weights = Vec::new();
    for (pos, item) in items(s) {
        let Some((n, w)) = item.split_once(':') else {
            return Err(err(s, pos, "expected n:weight").into());
        };
        let index: usize = n.trim().parse().map_err(|_| err(s, pos, "photon number must be a nonnegative integer"))?;
        let w_off = pos + n.len() + 1;
        weights.push((index, rational_at(s, w.trim(), w_off + (w.len() - w.trim_start().len()))?));
    }
    Ok(FockMixture::new(weights)?)
}

pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>, ParseError> {
    items(s).map(|(pos, item)| rational_at(s, item, pos)).collect()
}

/// `"z_end:N,…"` with rational `z_end`.
pub fn parse_schedule(s: &str) -> Result<Vec<(BigRational, usize)>, ParseError> {
    items(s)
        .map(|(pos, item)| {
            let (zs, n) = item.split_once(':').ok_or_else(|| err(s, pos, "expected z_end:N"))?;
            let z = rational_at(s, zs, pos)?;
            let n = n.parse().map_err(|_| err(s, pos + zs.len() + 1, "N must be a positive integer"))?;
            Ok((z, n))
        })
        .collect()
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, ParseError> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| err(text, lineno + 1, format!("line {}: expected key = value", lineno + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}
