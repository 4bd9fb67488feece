//! The vacuum profile majorizes nonnegative Fock mixtures.

use phasemaj::poly::ratio;
use phasemaj::{majorizes_continuous, mixture_radial, FockMixture, GridConfig, RadialProfile};

fn main() {
    let vacuum = RadialProfile::vacuum();
    let cfg = GridConfig::default();
    let mixtures = [
        FockMixture::new([(0, ratio(1, 2)), (1, ratio(1, 2))]).unwrap(),
        FockMixture::uniform(4),
        FockMixture::new([(0, ratio(3, 5)), (1, ratio(1, 5)), (2, ratio(1, 5))]).unwrap(),
    ];
    for mix in &mixtures {
        let v = majorizes_continuous(&vacuum, &mixture_radial(mix), &cfg).unwrap();
        println!("{:?}: holds {}, min margin {:.2e}", mix.weights().keys().collect::<Vec<_>>(), v.holds, v.min_margin);
    }
    // the reverse relation fails
    let rev = majorizes_continuous(&mixture_radial(&mixtures[0]), &vacuum, &cfg).unwrap();
    println!("reverse: holds {}, min margin {:.3}", rev.holds, rev.min_margin);
}
