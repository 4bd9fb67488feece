//! Random dyadic instances of the discrete convolution theorem.

use phasemaj::poly::ratio;
use phasemaj::theorems::{run_monte_carlo, verify_theorem1, MonteCarloConfig, Theorem1Instance};

fn main() {
    let inst = Theorem1Instance::new(3, ratio(1, 2), vec![ratio(1, 1), ratio(1, 2), ratio(1, 4)]).unwrap();
    let outcome = verify_theorem1(&inst).unwrap();
    let g: Vec<String> = outcome.g().iter().map(|q| q.to_string()).collect();
    println!("G = ({}), holds {}", g.join(", "), outcome.holds());

    let seed = 2024;
    for n in [2, 4, 6] {
        let s = run_monte_carlo(&MonteCarloConfig::new(n, ratio(1, 2), 5_000, seed)).unwrap();
        println!("N = {n}: holds {}, not applicable {}, violations {}", s.holds, s.not_applicable, s.violations);
    }
}
