//! Discretized continuous convolution theorem for (|0> + |1>)/2.

use phasemaj::poly::{int, ratio};
use phasemaj::theorems::verify_theorem2_convergence;
use phasemaj::{mixture_radial, vacuum_decomposition, FockMixture};

fn main() {
    let mix = FockMixture::new([(0, ratio(1, 2)), (1, ratio(1, 2))]).unwrap();
    let d = vacuum_decomposition(&mixture_radial(&mix));
    println!(
        "c = {} delta + ({}) e^(-z), integral {}, entry conditions {}",
        d.c.dirac_weight(),
        d.c.poly(),
        d.total,
        d.entry_conditions_hold()
    );
    let schedule = [(int(30), 64), (int(30), 128), (int(30), 256)];
    let report = verify_theorem2_convergence(&d.c, &schedule).unwrap();
    for level in &report.levels {
        println!("N = {}: {:?}, error {:.3e}", level.n, level.status, level.error_metric);
    }
    if let Some(w) = &report.witness {
        println!("witness {}x{}, doubly stochastic {}", w.dim, w.dim, w.doubly_stochastic);
    }
}
