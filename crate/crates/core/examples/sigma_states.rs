//! Beamsplitter output weights and the equal-mixture identity.

use phasemaj::sigma::{equal_mixture, sigma_coefficients, symmetry_check};

fn main() {
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        let s = sigma_coefficients(m, n).unwrap();
        let shown: Vec<String> = s.a.iter().map(|q| q.to_string()).collect();
        println!("sigma({m}, {n}) = [{}], total {}", shown.join(", "), s.total());
    }
    for total in [3, 6, 10] {
        let mix = equal_mixture(total).unwrap();
        println!("M = {total}: symmetric {}, equal mixture uniform over {} states", symmetry_check(total), mix.weights().len());
    }
}
