//! Phase-space Wigner entropy against closed forms.

use std::f64::consts::PI;

use phasemaj::majorize::wigner_entropy;
use phasemaj::poly::ratio;
use phasemaj::{mixture_radial, FockMixture, GridConfig, RadialProfile};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn main() {
    let cfg = GridConfig::entropy();
    let h0 = wigner_entropy(&RadialProfile::vacuum(), &cfg).unwrap();
    println!("vacuum: {h0:.10} (closed form 1 + ln pi = {:.10})", 1.0 + PI.ln());
    let mix = FockMixture::new([(0, ratio(1, 2)), (1, ratio(1, 2))]).unwrap();
    let h1 = wigner_entropy(&mixture_radial(&mix), &cfg).unwrap();
    println!("(|0> + |1>)/2: {h1:.10} (closed form 1 + gamma + ln pi = {:.10})", 1.0 + EULER_GAMMA + PI.ln());
}
