//! Laguerre tail recursion, checked exactly.

use phasemaj::fockspace::{recursion_identity_check, recursion_sides};

fn main() {
    let (lhs, rhs) = recursion_sides(3);
    println!("n = 3: {lhs}  vs  {rhs}");
    let ok: Vec<bool> = (1..=10).map(recursion_identity_check).collect();
    println!("n = 1..=10: {ok:?}");
}
