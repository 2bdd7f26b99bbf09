//! Matrices of the SU(2) irreducible representations: unitarity,
//! multiplicativity and characters.

use liewords::irrep::{character, irrep_matrix};
use liewords::seeds::rng;
use liewords::{haar_sample, GroupDescriptor};

fn main() {
    let mut r = rng(4);
    let g = haar_sample(&mut r, GroupDescriptor::Su2);
    let h = haar_sample(&mut r, GroupDescriptor::Su2);
    for level in 0..=4 {
        let (a, b) = (irrep_matrix(level, g.quat()), irrep_matrix(level, h.quat()));
        let ab = irrep_matrix(level, g.multiply(&h).quat());
        let unit = (a.adjoint() * &a).map(|z| z.norm()).trace();
        println!(
            "level {level}: |pi(gh) - pi(g)pi(h)| = {:.1e}, tr pi(g) = {:.6}, chi = {:.6}, sum |U*U|_ii = {unit:.3}",
            (ab - &a * &b).norm(),
            a.trace().re,
            character(level, g.angle()),
        );
    }
}
