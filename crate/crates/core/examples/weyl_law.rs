//! Eigenvalue counting against the Weyl constant.

use liewords::spectra::{counting_function, weyl_constant, weyl_ratio};
use liewords::GroupDescriptor;

fn main() {
    for g in [
        GroupDescriptor::Torus(1),
        GroupDescriptor::Torus(2),
        GroupDescriptor::Torus(3),
        GroupDescriptor::Su2,
    ] {
        println!("{g}: constant {:.6}", weyl_constant(g));
        for lambda in [1e2, 1e3, 1e4, 1e5] {
            println!(
                "  N({lambda:.0e}) = {:>8}, ratio {:.6}",
                counting_function(g, lambda),
                weyl_ratio(g, lambda)
            );
        }
    }
}
