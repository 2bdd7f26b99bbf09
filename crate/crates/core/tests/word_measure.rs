use std::f64::consts::PI;

use liewords::irrep::irrep_matrix;
use liewords::seeds::{rng, trial_seed};
use liewords::spectra::enumerate_modes;
use liewords::word_measure::{
    averaging_operator, build_alphabet, discrepancy_sweep, spectral_gap, theorem1_check, word_fourier_power, Alphabet,
    OperatorValue,
};
use liewords::{haar_sample, GroupDescriptor, ModeIndex, Quaternion, SpectralMode};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn level(k: usize) -> SpectralMode {
    SpectralMode {
        index: ModeIndex::Level(k),
        eigenvalue: (k * (k + 2)) as f64,
        dim: k + 1,
    }
}

#[test]
fn torus_k2_l3_against_complex_word_sum() {
    let a = build_alphabet(31, 2, GroupDescriptor::Torus(1));
    let letters: Vec<f64> = a.letters().iter().map(|p| p.coords()[0]).collect();
    for m in -5i64..=5 {
        let mode = SpectralMode {
            index: ModeIndex::Frequency(vec![m]),
            eigenvalue: 4.0 * PI * PI * (m * m) as f64,
            dim: 1,
        };
        let mut sum = Complex64::new(0.0, 0.0);
        for &x in &letters {
            for &y in &letters {
                for &z in &letters {
                    sum += Complex64::from_polar(1.0, -2.0 * PI * m as f64 * (x + y + z));
                }
            }
        }
        sum /= 64.0;
        let OperatorValue::Scalar(v) = word_fourier_power(&a, &mode, 3) else {
            panic!()
        };
        assert!((v - sum.re).abs() <= 1e-12 && sum.im.abs() <= 1e-12, "m = {m}");
    }
}

#[test]
fn su2_k2_l3_against_matrix_word_sum() {
    let a = build_alphabet(32, 2, GroupDescriptor::Su2);
    let letters: Vec<Quaternion> = a.letters().iter().map(|p| p.quat()).collect();
    for k in 0..=4 {
        let mut sum = DMatrix::<Complex64>::zeros(k + 1, k + 1);
        for &x in &letters {
            for &y in &letters {
                for &z in &letters {
                    sum += irrep_matrix(k, x) * irrep_matrix(k, y) * irrep_matrix(k, z);
                }
            }
        }
        let OperatorValue::Matrix(v) = word_fourier_power(&a, &level(k), 3) else {
            panic!()
        };
        assert!((v - sum.unscale(64.0)).norm() <= 1e-9, "level {k}");
    }
}

#[test]
fn haar_generators_have_mean_zero_cosines() {
    let n = 10_000;
    let vals: Vec<f64> = (0..n)
        .map(|i| build_alphabet(trial_seed(5, i), 1, GroupDescriptor::Torus(1)).gens[0].coords()[0])
        .map(|x| (2.0 * PI * x).cos())
        .collect();
    let mean = vals.iter().sum::<f64>() / n as f64;
    let sigma = (0.5 / n as f64).sqrt();
    assert!(mean.abs() <= 3.0 * sigma, "{mean}");
}

#[test]
fn averaging_operator_has_mean_zero_on_nontrivial_levels() {
    let n = 4000;
    for k in 1..=3 {
        let samples: Vec<DMatrix<Complex64>> = (0..n)
            .map(|i| {
                let a = build_alphabet(trial_seed(6, i), 1, GroupDescriptor::Su2);
                match averaging_operator(&a, &level(k)).value {
                    OperatorValue::Matrix(m) => m,
                    OperatorValue::Scalar(_) => unreachable!(),
                }
            })
            .collect();
        let mean = samples
            .iter()
            .fold(DMatrix::zeros(k + 1, k + 1), |acc, m| acc + m)
            .unscale(n as f64);
        let var: f64 = samples.iter().map(|m| (m - &mean).norm_squared()).sum::<f64>() / (n - 1) as f64;
        // E‖mean‖_F² = Σ var / N
        assert!(
            mean.norm() <= 3.0 * (var / n as f64).sqrt(),
            "level {k}: {}",
            mean.norm()
        );
    }
}

#[test]
fn operators_are_hermitian_contractions() {
    let a = build_alphabet(7, 5, GroupDescriptor::Su2);
    for k in 0..=8 {
        let op = averaging_operator(&a, &level(k)).value;
        assert!(op.hermitian_defect() <= 1e-12);
        assert!(op.norm() <= 1.0 + 1e-12);
        if k == 0 {
            assert!(op.distance(&op.identity_like()) <= 1e-15);
        }
    }
}

#[test]
fn gap_invariant_under_conjugation() {
    let mut r = rng(8);
    for g in [GroupDescriptor::Su2, GroupDescriptor::Torus(2)] {
        let a = build_alphabet(9, 4, g);
        let h = haar_sample(&mut r, g);
        let b = a.conjugated(&h);
        let ra = spectral_gap(&a, 80.0).unwrap();
        let rb = spectral_gap(&b, 80.0).unwrap();
        for ((ma, va), (mb, vb)) in ra.per_mode.iter().zip(&rb.per_mode) {
            assert_eq!(ma, mb);
            assert!((va - vb).abs() <= 1e-10);
        }
    }
}

#[test]
fn twenty_generators_mix_ten_levels() {
    let cutoff = 120.0; // levels ≤ 10
    let good = (0..200)
        .filter(|&i| {
            spectral_gap(&build_alphabet(trial_seed(10, i), 20, GroupDescriptor::Su2), cutoff)
                .unwrap()
                .gap
                < 0.75
        })
        .count();
    assert!(good >= 190, "{good}");
}

#[test]
fn discrepancy_respects_gap_chain() {
    for g in [GroupDescriptor::Torus(2), GroupDescriptor::Su2] {
        let a = build_alphabet(12, 6, g);
        for d in discrepancy_sweep(&a, 0.03, 40, 1e-9).unwrap() {
            let bound = d.gap.powi(d.ell as i32) * d.smoothed_norm + d.error_bar;
            assert!(d.value <= bound * (1.0 + 1e-12), "{g} ℓ = {}", d.ell);
        }
    }
}

#[test]
fn torus2_theorem_check() {
    let g = GroupDescriptor::Torus(2);
    let (t, ell): (f64, usize) = (0.05, 20);
    let eta = 0.5f64.powi(ell as i32) * t.powf(-0.5);
    let rep = theorem1_check(g, 32, t, ell, eta, 50, 99, 1.0).unwrap();
    assert!(rep.hypothesis_met);
    assert!(rep.holds && rep.fraction >= 1.0 - rep.delta_fitted.min(1.0));
    assert_eq!(rep.trials.len(), 50);
}

#[test]
fn out_of_window_is_flagged() {
    let g = GroupDescriptor::Su2;
    let rep = theorem1_check(g, 8, 0.05, 2, 1e-9, 2, 1, 1.0).unwrap();
    assert!(!rep.hypothesis_met);
}

#[test]
fn alphabet_from_generators_matches_mode_list() {
    let g = GroupDescriptor::Torus(2);
    let a = Alphabet::from_generators(g, vec![g.identity()]);
    let modes = enumerate_modes(g, 200.0).unwrap();
    assert!(modes.iter().all(|m| averaging_operator(&a, m).value.norm() == 1.0));
}
