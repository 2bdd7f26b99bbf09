//! Plan (k, ell) for a 2r-net on T^2, then certify it on seeded alphabets.

use liewords::covering::{net_certificate, plan_net_parameters};
use liewords::seeds::trial_seed;
use liewords::{build_alphabet, GroupDescriptor};

fn main() {
    let (n, r, delta) = (2, 0.1, 0.2);
    let plan = plan_net_parameters(n, r, delta, 1.0).unwrap();
    println!(
        "epsilon {:.5}, k >= {}, ell >= {}",
        plan.epsilon, plan.k_min, plan.ell_min
    );

    let g = GroupDescriptor::Torus(n);
    for i in 0..5 {
        let a = build_alphabet(trial_seed(9, i), plan.k_min as usize, g);
        let cert = net_certificate(&a, r, plan.ell_min as usize, 2500, trial_seed(10, i)).unwrap();
        let cover = cert.cover.unwrap();
        println!(
            "trial {i}: {:?} at ell = {} with {} points, radius {:.4} (+ mesh {:.4})",
            cert.verdict, cert.ell_used, cert.points, cover.radius, cover.mesh
        );
    }
}
