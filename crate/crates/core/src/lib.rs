//! Exact and numerical verification of majorization relations between
//! radial Wigner functions of Fock-state mixtures.
//!
//! Profiles live in the variable `z = r²` (`x² + p² = r²`) with the factor
//! `1/π` absorbed, so the vacuum is `e^(−z)` and every profile has unit
//! integral over `[0, ∞)`. Symbolic work uses exact rationals throughout;
//! floating point enters only for quadrature, grid rearrangements and the
//! continuous discretization.

pub mod cli;
pub mod fockspace;
pub mod majorize;
pub mod poly;
pub mod polyexp;
pub mod quadrature;
pub mod report;
pub mod sigma;
pub mod sturm;
pub mod theorems;

pub use fockspace::{
    certify_nonnegative, fock_radial, mixture_radial, vacuum_decomposition, FockMixture, RadialProfile,
};
pub use majorize::{majorizes_continuous, majorizes_discrete, robin_hood_decompose, GridConfig};
pub use poly::Poly;
pub use polyexp::PolyExpFn;
