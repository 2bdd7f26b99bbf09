//! Draw a seeded alphabet on SU(2), multiply out short words and check the
//! group laws on a few of them.

use liewords::covering::{enumerate_words, DEFAULT_DEDUP_TOL};
use liewords::{build_alphabet, GroupDescriptor};

fn main() {
    let a = build_alphabet(7, 3, GroupDescriptor::Su2);
    for (i, g) in a.gens.iter().enumerate() {
        println!("g{i} = {:?}  angle {:.4}", g.quat().to_array(), g.angle());
    }
    let letters = a.letters();
    // letters interleave each generator with its inverse
    let w = letters[0].multiply(&letters[2]).multiply(&letters[3]);
    println!("g0 g1 g1^-1 = g0: error {:.2e}", w.distance(&letters[0]));

    for ell in 0..=4 {
        let words = enumerate_words(&a, ell, DEFAULT_DEDUP_TOL).unwrap();
        println!("distinct words of length <= {ell}: {}", words.len());
    }
}
