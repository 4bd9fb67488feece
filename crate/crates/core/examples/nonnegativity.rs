//! Exact nonnegativity certificates via Sturm sequences.

use phasemaj::fockspace::NonnegWitness;
use phasemaj::poly::ratio;
use phasemaj::{certify_nonnegative, fock_radial, mixture_radial, FockMixture};

fn main() {
    let cases = [
        ("|1>", fock_radial(1)),
        ("(|0> + |1>)/2", mixture_radial(&FockMixture::new([(0, ratio(1, 2)), (1, ratio(1, 2))]).unwrap())),
        ("(|0> + |2>)/2", mixture_radial(&FockMixture::new([(0, ratio(1, 2)), (2, ratio(1, 2))]).unwrap())),
        ("uniform over |0>..|4>", mixture_radial(&FockMixture::uniform(5))),
    ];
    for (name, f) in cases {
        let cert = certify_nonnegative(&f);
        match cert.witness {
            NonnegWitness::NoSignChange { roots, .. } => {
                println!("{name}: nonnegative ({} touching roots)", roots.len())
            }
            NonnegWitness::Negative { interval, point } => {
                println!("{name}: negative on ({}, {}], e.g. at z = {point}", interval.lo, interval.hi)
            }
        }
    }
}
