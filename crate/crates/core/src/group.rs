//! Group arithmetic on the flat torus `T^n = R^n / Z^n` and on `SU(2)`,
//! realised as unit quaternions with the round metric of the unit 3-sphere.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Which compact group we are working on.
///
/// `Torus(n)` is the flat unit torus of dimension `n` (volume 1);
/// `Su2` is `SU(2) ≅ S³` with its bi-invariant round metric (volume 2π²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "n")]
pub enum GroupDescriptor {
    Torus(usize),
    Su2,
}

impl GroupDescriptor {
    pub fn torus(n: usize) -> Self {
        assert!(n >= 1, "torus dimension must be at least 1");
        GroupDescriptor::Torus(n)
    }

    /// Manifold dimension.
    pub fn dim(&self) -> usize {
        match *self {
            GroupDescriptor::Torus(n) => n,
            GroupDescriptor::Su2 => 3,
        }
    }

    /// Riemannian volume.
    pub fn vol(&self) -> f64 {
        match self {
            GroupDescriptor::Torus(_) => 1.0,
            GroupDescriptor::Su2 => 2.0 * PI * PI,
        }
    }

    /// Largest distance between two points.
    pub fn diameter(&self) -> f64 {
        match *self {
            GroupDescriptor::Torus(n) => 0.5 * (n as f64).sqrt(),
            GroupDescriptor::Su2 => PI,
        }
    }

    pub fn identity(&self) -> GroupPoint {
        match *self {
            GroupDescriptor::Torus(n) => GroupPoint::Torus(vec![0.0; n]),
            GroupDescriptor::Su2 => GroupPoint::Su2(Quaternion::ONE),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            GroupDescriptor::Torus(n) => format!("torus{n}"),
            GroupDescriptor::Su2 => "su2".to_string(),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Torus(n) => write!(f, "T^{n}"),
            GroupDescriptor::Su2 => write!(f, "SU(2)"),
        }
    }
}

/// Quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn dot(self, o: Self) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Euclidean distance in `R^4`.
    pub fn chord(self, o: Self) -> f64 {
        let d = [self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z];
        d.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, r: Quaternion) -> Quaternion {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        Quaternion {
            w: a * e - b * f - c * g - d * h,
            x: a * f + b * e + c * h - d * g,
            y: a * g - b * h + c * e + d * f,
            z: a * h + b * g - c * f + d * e,
        }
    }
}

/// A group element. Torus coordinates live in `[0, 1)`; SU(2) points are
/// unit quaternions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GroupPoint {
    Torus(Vec<f64>),
    Su2(Quaternion),
}

/// Reduce a real number into `[0, 1)`.
#[inline]
pub fn wrap_unit(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl GroupPoint {
    /// Torus point from arbitrary real coordinates (reduced mod 1).
    pub fn torus(coords: impl IntoIterator<Item = f64>) -> Self {
        GroupPoint::Torus(coords.into_iter().map(wrap_unit).collect())
    }

    /// SU(2) point from a quaternion (normalized).
    pub fn su2(q: Quaternion) -> Self {
        GroupPoint::Su2(q.normalized())
    }

    pub fn group(&self) -> GroupDescriptor {
        match self {
            GroupPoint::Torus(c) => GroupDescriptor::Torus(c.len()),
            GroupPoint::Su2(_) => GroupDescriptor::Su2,
        }
    }

    pub fn coords(&self) -> &[f64] {
        match self {
            GroupPoint::Torus(c) => c,
            GroupPoint::Su2(_) => panic!("SU(2) point has no torus coordinates"),
        }
    }

    pub fn quat(&self) -> Quaternion {
        match self {
            GroupPoint::Su2(q) => *q,
            GroupPoint::Torus(_) => panic!("torus point is not a quaternion"),
        }
    }

    pub fn multiply(&self, other: &GroupPoint) -> GroupPoint {
        match (self, other) {
            (GroupPoint::Torus(a), GroupPoint::Torus(b)) => {
                assert_eq!(a.len(), b.len(), "torus dimensions differ");
                GroupPoint::Torus(a.iter().zip(b).map(|(x, y)| wrap_unit(x + y)).collect())
            }
            (GroupPoint::Su2(a), GroupPoint::Su2(b)) => GroupPoint::Su2((*a * *b).normalized()),
            _ => panic!("cannot multiply points of different groups"),
        }
    }

    pub fn inverse(&self) -> GroupPoint {
        match self {
            GroupPoint::Torus(a) => GroupPoint::Torus(a.iter().map(|x| wrap_unit(-x)).collect()),
            GroupPoint::Su2(q) => GroupPoint::Su2(q.conj()),
        }
    }

    /// Geodesic distance. On the torus: shortest wrapped Euclidean offset.
    /// On SU(2): the great-circle angle `arccos⟨x, y⟩ ∈ [0, π]`, evaluated
    /// as `2·atan2(|x−y|, |x+y|)` which is well conditioned near 0 and π.
    pub fn distance(&self, other: &GroupPoint) -> f64 {
        match (self, other) {
            (GroupPoint::Torus(a), GroupPoint::Torus(b)) => {
                assert_eq!(a.len(), b.len(), "torus dimensions differ");
                a.iter()
                    .zip(b)
                    .map(|(x, y)| {
                        let d = wrap_unit(x - y);
                        let d = d.min(1.0 - d);
                        d * d
                    })
                    .sum::<f64>()
                    .sqrt()
            }
            (GroupPoint::Su2(a), GroupPoint::Su2(b)) => {
                let minus = a.chord(*b);
                let plus = a.chord(Quaternion::new(-b.w, -b.x, -b.y, -b.z));
                2.0 * minus.atan2(plus)
            }
            _ => panic!("cannot measure distance between different groups"),
        }
    }

    /// Distance to the identity: the rotation angle on SU(2).
    pub fn angle(&self) -> f64 {
        self.distance(&self.group().identity())
    }
}

/// One Haar-distributed element. Torus: independent uniform coordinates.
/// SU(2): four standard normals, normalized.
pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R, group: GroupDescriptor) -> GroupPoint {
    match group {
        GroupDescriptor::Torus(n) => GroupPoint::Torus((0..n).map(|_| rng.random::<f64>()).collect()),
        GroupDescriptor::Su2 => loop {
            let q = Quaternion::new(
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            );
            // all-zero draw has probability zero; redraw rather than divide by it
            if q.norm() > 1e-300 {
                break GroupPoint::Su2(q.normalized());
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identities() {
        assert_eq!(GroupDescriptor::Torus(2).identity(), GroupPoint::Torus(vec![0.0, 0.0]));
        assert_eq!(GroupDescriptor::Su2.identity(), GroupPoint::Su2(Quaternion::ONE));
    }

    #[test]
    fn torus_law() {
        let a = GroupPoint::torus([0.7]);
        let b = GroupPoint::torus([0.6]);
        let c = a.multiply(&b).coords()[0];
        assert!((c - 0.3).abs() < 1e-15);
        let inv = GroupPoint::torus([0.3]).inverse().coords()[0];
        assert!((inv - 0.7).abs() < 1e-15);
    }

    #[test]
    fn quaternion_units() {
        let i = GroupPoint::su2(Quaternion::I);
        let j = GroupPoint::su2(Quaternion::J);
        assert_eq!(i.multiply(&j), GroupPoint::su2(Quaternion::K));
        let q = Quaternion::new(0.5, -0.5, 0.5, 0.5);
        assert_eq!(
            GroupPoint::su2(q).inverse().quat(),
            Quaternion::new(0.5, 0.5, -0.5, -0.5)
        );
    }

    #[test]
    fn distances() {
        let d = GroupPoint::torus([0.1]).distance(&GroupPoint::torus([0.9]));
        assert!((d - 0.2).abs() < 1e-15);
        let e = GroupPoint::su2(Quaternion::ONE);
        let minus = GroupPoint::su2(Quaternion::new(-1.0, 0.0, 0.0, 0.0));
        assert!((e.distance(&minus) - PI).abs() < 1e-15);
        assert_eq!(e.distance(&e), 0.0);
    }

    #[test]
    fn wrap_is_half_open() {
        assert_eq!(wrap_unit(-1e-18), 0.0);
        assert_eq!(wrap_unit(1.0), 0.0);
        assert!((wrap_unit(-0.25) - 0.75).abs() < 1e-16);
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5)
                .map(|_| haar_sample(&mut rng, GroupDescriptor::Su2))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }

    #[test]
    fn haar_samples_are_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let q = haar_sample(&mut rng, GroupDescriptor::Su2).quat();
            assert!((q.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    #[should_panic]
    fn mixed_groups_panic() {
        GroupDescriptor::Su2
            .identity()
            .multiply(&GroupDescriptor::Torus(1).identity());
    }
}
