//! Smoothed discrepancy of the word measure on T^2 as the word length grows.

use liewords::word_measure::discrepancy_sweep;
use liewords::{build_alphabet, GroupDescriptor};

fn main() {
    let a = build_alphabet(3, 8, GroupDescriptor::Torus(2));
    let t = 0.05;
    println!("ell  discrepancy      gap^ell bound   tail");
    for d in discrepancy_sweep(&a, t, 30, 1e-10).unwrap().iter().step_by(3) {
        let bound = d.gap.powi(d.ell as i32) * d.smoothed_norm;
        println!("{:>3}  {:.6e}  {:.6e}  {:.1e}", d.ell, d.value, bound, d.error_bar);
    }
}
