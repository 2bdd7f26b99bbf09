//! Spectral gap of the averaging operator for random SU(2) alphabets of
//! growing size, compared with the matrix Chernoff bound.

use liewords::seeds::trial_seed;
use liewords::word_measure::{chernoff_delta, spectral_gap};
use liewords::{build_alphabet, GroupDescriptor};

fn main() {
    let g = GroupDescriptor::Su2;
    let cutoff = 35.0; // levels <= 5
    let trials = 200;
    for k in [4, 8, 16, 32, 64] {
        let gaps: Vec<f64> = (0..trials)
            .map(|i| {
                spectral_gap(&build_alphabet(trial_seed(1, i), k, g), cutoff)
                    .unwrap()
                    .gap
            })
            .collect();
        let mean = gaps.iter().sum::<f64>() / trials as f64;
        let over = gaps.iter().filter(|&&x| x > 0.5).count() as f64 / trials as f64;
        let bound = chernoff_delta(k, cutoff, g, 1.0);
        println!(
            "k = {k:>2}: mean gap {mean:.3}, P[gap > 1/2] = {over:.3}, bound {:.3e}",
            bound.aw_exact
        );
    }
}
