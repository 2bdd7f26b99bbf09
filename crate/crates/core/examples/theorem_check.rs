//! Repeated discrepancy trials inside the admissible (t, eta) window on SU(2).

use liewords::word_measure::theorem1_check;
use liewords::GroupDescriptor;

fn main() {
    let (t, ell): (f64, usize) = (0.05, 20);
    let eta = 0.5f64.powi(ell as i32) * t.powf(-0.75);
    let rep = theorem1_check(GroupDescriptor::Su2, 64, t, ell, eta, 40, 2024, 1.0).unwrap();
    println!(
        "window [{:.3e}, {:.3e}] contains eta = {eta:.3e}: {}",
        rep.window_lower, rep.window_upper, rep.hypothesis_met
    );
    println!(
        "delta at CG = 1: {:.3e}, at fitted CG: {:.3e} (vacuous: {})",
        rep.delta, rep.delta_fitted, rep.vacuous
    );
    println!("{} of {} trials within 2 eta", rep.successes, rep.trials.len());
}
