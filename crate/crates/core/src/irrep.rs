//! Irreducible unitary representations of SU(2).
//!
//! The level-`k` irrep acts on homogeneous degree-`k` polynomials in two
//! variables, written in the orthonormal basis
//! `u_m = sqrt(C(k, m)) · e1^(k−m) e2^m`, `m = 0..=k`. At level 1 this is
//! the defining 2×2 matrix of the quaternion.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::group::Quaternion;
use crate::numeric::binomial;

/// The 2×2 special unitary matrix `[[α, β], [−β̄, ᾱ]]` of `w + xi + yj + zk`,
/// with `α = w + ix`, `β = y + iz`. Quaternion products map to matrix products.
pub fn su2_matrix(q: Quaternion) -> [[Complex64; 2]; 2] {
    let alpha = Complex64::new(q.w, q.x);
    let beta = Complex64::new(q.y, q.z);
    [[alpha, beta], [-beta.conj(), alpha.conj()]]
}

/// Matrix of the level-`level` irrep (dimension `level + 1`) at `q`.
pub fn irrep_matrix(level: usize, q: Quaternion) -> DMatrix<Complex64> {
    sym_power(level, su2_matrix(q))
}

/// Symmetric power of a 2×2 matrix in the binomial-orthonormal monomial basis.
pub(crate) fn sym_power(level: usize, u: [[Complex64; 2]; 2]) -> DMatrix<Complex64> {
    let d = level + 1;
    // image of e1 is (u11, u21), of e2 is (u12, u22)
    let (a, b) = (u[0][0], u[1][0]);
    let (c, dd) = (u[0][1], u[1][1]);
    let weights: Vec<f64> = (0..d).map(|m| binomial(level as u64, m as u64).sqrt()).collect();

    let mut out = DMatrix::<Complex64>::zeros(d, d);
    let mut poly = vec![Complex64::new(0.0, 0.0); d];
    for m in 0..d {
        poly.iter_mut().for_each(|p| *p = Complex64::new(0.0, 0.0));
        poly[0] = Complex64::new(1.0, 0.0);
        let mut deg = 0;
        for _ in 0..(level - m) {
            mul_linear(&mut poly, deg, a, b);
            deg += 1;
        }
        for _ in 0..m {
            mul_linear(&mut poly, deg, c, dd);
            deg += 1;
        }
        for p in 0..d {
            out[(p, m)] = poly[p] * (weights[m] / weights[p]);
        }
    }
    out
}

// poly ← poly · (lo + hi·x), where poly currently has degree `deg`
fn mul_linear(poly: &mut [Complex64], deg: usize, lo: Complex64, hi: Complex64) {
    poly[deg + 1] = poly[deg] * hi;
    for j in (1..=deg).rev() {
        poly[j] = poly[j] * lo + poly[j - 1] * hi;
    }
    poly[0] *= lo;
}

/// SU(2) character `sin((k+1)θ) / sin θ`, evaluated through the Chebyshev
/// recurrence `U_k(cos θ)` so that `θ = 0` and `θ = π` need no special care.
pub fn character(level: usize, theta: f64) -> f64 {
    let x = theta.cos();
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if level == 0 {
        return 1.0;
    }
    for _ in 1..level {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn level_zero_is_trivial() {
        let q = Quaternion::new(0.1, 0.7, -0.5, 0.3).normalized();
        let m = irrep_matrix(0, q);
        assert_eq!(m.shape(), (1, 1));
        assert!((m[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn level_one_is_defining() {
        let q = Quaternion::new(0.1, 0.7, -0.5, 0.3).normalized();
        let m = irrep_matrix(1, q);
        let u = su2_matrix(q);
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[(i, j)] - u[i][j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn character_values() {
        assert!((character(3, 0.0) - 4.0).abs() < 1e-15);
        assert!((character(3, 1e-9) - 4.0).abs() < 1e-12);
        assert!(character(1, PI / 2.0).abs() < 1e-15);
        assert!((character(4, PI) - 5.0).abs() < 1e-12);
        assert!((character(5, PI) + 6.0).abs() < 1e-12);
        let th = 0.37;
        assert!((character(6, th) - (7.0 * th).sin() / th.sin()).abs() < 1e-12);
    }

    #[test]
    fn high_level_stays_unitary() {
        let q = Quaternion::new(0.3, -0.2, 0.9, 0.1).normalized();
        for level in [20, 40] {
            let m = irrep_matrix(level, q);
            let err = (&m * m.adjoint() - DMatrix::identity(level + 1, level + 1)).norm();
            assert!(err < 1e-9, "level {level}: {err}");
        }
    }
}
