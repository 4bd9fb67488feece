//! Radial Wigner profiles of single Fock states and a mixture.

use phasemaj::poly::ratio;
use phasemaj::{fock_radial, mixture_radial, FockMixture};

fn main() {
    for n in 0..4 {
        let f = fock_radial(n);
        println!("|{n}>: f(z) = ({}) e^(-z), f(0) = {}", f.poly(), f.eval(0.0));
    }
    let mix = FockMixture::new([(0, ratio(1, 2)), (1, ratio(1, 2))]).unwrap();
    let f = mixture_radial(&mix);
    println!("(|0><0| + |1><1|)/2: ({}) e^(-z)", f.poly());
    println!("integral over [0, inf) = {}", f.func().total_integral());
}
