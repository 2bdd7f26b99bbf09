//! Counting obstructions for nets on the torus.

use liewords::covering::{abelian_lower_bounds, lower_bounds_for_m};

fn main() {
    let r = lower_bounds_for_m(2, 0.01, 40).unwrap();
    println!(
        "n = 2, r = 0.01, m = 40: k >= {:.3}, ell >= {:.2}",
        r.k_lower, r.ell_lower
    );

    for (k, ell) in [(2, 2), (3, 3), (4, 6)] {
        let r = abelian_lower_bounds(2, 0.03, k, ell).unwrap();
        println!(
            "k = {k}, ell = {ell}: {} distinct values (bound {}), volume condition met: {:?}",
            r.exact_count.unwrap(),
            r.binom_bound.unwrap(),
            r.volume_condition_met
        );
    }
}
