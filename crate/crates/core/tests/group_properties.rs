use std::f64::consts::PI;

use liewords::irrep::character;
use liewords::seeds::rng;
use liewords::{haar_sample, GroupDescriptor, GroupPoint, Quaternion};
use proptest::prelude::*;

fn unit_quaternion() -> impl Strategy<Value = GroupPoint> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("away from zero", |(w, x, y, z)| w * w + x * x + y * y + z * z > 1e-3)
        .prop_map(|(w, x, y, z)| GroupPoint::su2(Quaternion::new(w, x, y, z)))
}

fn torus3() -> impl Strategy<Value = GroupPoint> {
    prop::array::uniform3(-3.0..3.0f64).prop_map(GroupPoint::torus)
}

fn point() -> impl Strategy<Value = GroupPoint> {
    prop_oneof![unit_quaternion(), torus3()]
}

fn same_group_triple() -> impl Strategy<Value = (GroupPoint, GroupPoint, GroupPoint)> {
    prop_oneof![
        (unit_quaternion(), unit_quaternion(), unit_quaternion()),
        (torus3(), torus3(), torus3()),
    ]
}

proptest! {
    #[test]
    fn associativity((a, b, c) in same_group_triple()) {
        let lhs = a.multiply(&b).multiply(&c);
        let rhs = a.multiply(&b.multiply(&c));
        prop_assert!(lhs.distance(&rhs) <= 1e-12);
    }

    #[test]
    fn identity_and_inverse(g in point()) {
        let e = g.group().identity();
        prop_assert!(e.multiply(&g).distance(&g) <= 1e-12);
        prop_assert!(g.multiply(&e).distance(&g) <= 1e-12);
        prop_assert!(g.multiply(&g.inverse()).distance(&e) <= 1e-12);
        prop_assert!(g.inverse().multiply(&g).distance(&e) <= 1e-12);
    }

    #[test]
    fn metric_axioms((x, y, z) in same_group_triple()) {
        let dxy = x.distance(&y);
        prop_assert!(x.distance(&x) <= 1e-12);
        prop_assert!(dxy >= 0.0);
        prop_assert!((dxy - y.distance(&x)).abs() <= 1e-12);
        prop_assert!(x.distance(&z) <= dxy + y.distance(&z) + 1e-12);
        prop_assert!(dxy <= x.group().diameter() + 1e-12);
    }

    #[test]
    fn left_invariance((g, x, y) in same_group_triple()) {
        let d = x.distance(&y);
        prop_assert!((g.multiply(&x).distance(&g.multiply(&y)) - d).abs() <= 1e-12);
    }

    #[test]
    fn canonical_forms(g in point()) {
        match &g {
            GroupPoint::Torus(c) => prop_assert!(c.iter().all(|&x| (0.0..1.0).contains(&x))),
            GroupPoint::Su2(q) => prop_assert!((q.norm() - 1.0).abs() <= 1e-12),
        }
    }
}

#[test]
fn spec_examples() {
    assert_eq!(GroupDescriptor::Torus(2).identity(), GroupPoint::torus([0.0, 0.0]));
    assert_eq!(GroupDescriptor::Su2.identity(), GroupPoint::su2(Quaternion::ONE));
    let a = GroupPoint::torus([0.7]).multiply(&GroupPoint::torus([0.6]));
    assert!((a.coords()[0] - 0.3).abs() < 1e-15);
    assert!((GroupPoint::torus([0.3]).inverse().coords()[0] - 0.7).abs() < 1e-15);
    assert!((GroupPoint::torus([0.1]).distance(&GroupPoint::torus([0.9])) - 0.2).abs() < 1e-15);
    let minus = GroupPoint::su2(Quaternion::new(-1.0, 0.0, 0.0, 0.0));
    assert!((GroupDescriptor::Su2.identity().distance(&minus) - PI).abs() < 1e-15);
    let ij = GroupPoint::su2(Quaternion::I).multiply(&GroupPoint::su2(Quaternion::J));
    assert!(ij.distance(&GroupPoint::su2(Quaternion::K)) < 1e-15);
    let q = Quaternion::new(0.5, 0.5, -0.5, 0.5);
    assert_eq!(
        GroupPoint::su2(q).inverse().quat(),
        Quaternion::new(0.5, -0.5, 0.5, -0.5)
    );
}

#[test]
fn thousand_random_triples() {
    let mut r = rng(2024);
    for g in [GroupDescriptor::Su2, GroupDescriptor::Torus(2)] {
        let (mut assoc, mut inv, mut left) = (0.0_f64, 0.0_f64, 0.0_f64);
        for _ in 0..1000 {
            let a = haar_sample(&mut r, g);
            let b = haar_sample(&mut r, g);
            let c = haar_sample(&mut r, g);
            assoc = assoc.max(a.multiply(&b).multiply(&c).distance(&a.multiply(&b.multiply(&c))));
            inv = inv.max(a.multiply(&a.inverse()).distance(&g.identity()));
            left = left.max((a.multiply(&b).distance(&a.multiply(&c)) - b.distance(&c)).abs());
        }
        assert!(
            assoc <= 1e-12 && inv <= 1e-12 && left <= 1e-12,
            "{g}: {assoc} {inv} {left}"
        );
    }
}

#[test]
fn haar_torus_first_moment() {
    let mut r = rng(1);
    let n = 1_000_000;
    let (mut re, mut im) = (0.0, 0.0);
    for _ in 0..n {
        let x = haar_sample(&mut r, GroupDescriptor::Torus(1)).coords()[0];
        re += (2.0 * PI * x).cos();
        im += (2.0 * PI * x).sin();
    }
    let mean = (re * re + im * im).sqrt() / n as f64;
    assert!(mean <= 5e-3, "{mean}");
}

#[test]
fn haar_su2_character_mean() {
    let mut r = rng(2);
    let n = 1_000_000;
    let mean: f64 = (0..n)
        .map(|_| character(1, haar_sample(&mut r, GroupDescriptor::Su2).angle()))
        .sum::<f64>()
        / n as f64;
    assert!(mean.abs() <= 1e-2, "{mean}");
}

#[test]
fn haar_left_translation_invariance() {
    // χ_1 and χ_2 have mean 0 and variance 1 under Haar measure
    let g = GroupDescriptor::Su2;
    let mut r = rng(3);
    let h = haar_sample(&mut r, g);
    let n = 200_000;
    for level in [1usize, 2] {
        let plain: f64 = (0..n)
            .map(|_| character(level, haar_sample(&mut r, g).angle()))
            .sum::<f64>()
            / n as f64;
        let shifted: f64 = (0..n)
            .map(|_| character(level, h.multiply(&haar_sample(&mut r, g)).angle()))
            .sum::<f64>()
            / n as f64;
        let sigma = (2.0 / n as f64).sqrt();
        assert!(
            (plain - shifted).abs() <= 3.0 * sigma,
            "level {level}: {plain} vs {shifted}"
        );
    }
}

#[test]
fn seeded_sequences_repeat() {
    let draw = |seed| {
        let mut r = rng(seed);
        (0..50)
            .map(|_| haar_sample(&mut r, GroupDescriptor::Su2))
            .collect::<Vec<_>>()
    };
    assert_eq!(draw(42), draw(42));
    assert_ne!(draw(42), draw(43));
}
