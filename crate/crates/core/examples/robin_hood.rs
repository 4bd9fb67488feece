//! Doubly stochastic witness for a discrete majorization.

use phasemaj::majorize::is_doubly_stochastic;
use phasemaj::{majorizes_discrete, robin_hood_decompose};

fn main() {
    let x = [0.5, 0.3, 0.2, 0.0];
    let y = [0.1, 0.3, 0.35, 0.25];
    println!("x > y: {}", majorizes_discrete(&x, &y, 1e-12).holds);
    let seq = robin_hood_decompose(&x, &y).unwrap();
    for t in &seq.transfers {
        println!("move {:.3} from {} to {}", t.amount, t.from, t.to);
    }
    println!("D x = {:?}", seq.witness.mul_vec(&x));
    println!("doubly stochastic: {}", is_doubly_stochastic(&seq.witness, 1e-12));
}
