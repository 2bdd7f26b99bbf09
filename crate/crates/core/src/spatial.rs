//! Nearest-neighbour search by uniform grid bucketing.
//!
//! On `Tⁿ` the grid is periodic in the coordinates. On SU(2) the points are
//! bucketed in an ambient grid over `[−1, 1]⁴` and compared by chord length,
//! which is monotone in the geodesic angle. Queries search Chebyshev rings of
//! cells outward and stop once no unsearched cell can hold a closer point.

use std::collections::HashMap;

use crate::group::{GroupDescriptor, GroupPoint};

#[derive(Debug, Clone)]
enum Buckets {
    Torus {
        n: usize,
        cells: usize,
        table: Vec<Vec<usize>>,
    },
    Su2 {
        cells: usize,
        table: HashMap<[i64; 4], Vec<usize>>,
    },
}

#[derive(Debug, Clone)]
pub struct SpatialIndex {
    group: GroupDescriptor,
    points: Vec<GroupPoint>,
    buckets: Buckets,
}

fn cells_for(count: usize, dim: usize) -> usize {
    ((count as f64).powf(1.0 / dim as f64).floor() as usize).max(1)
}

fn torus_cell(x: f64, cells: usize) -> usize {
    ((x * cells as f64) as usize).min(cells - 1)
}

fn ambient_cell(x: f64, cells: usize) -> i64 {
    (((x + 1.0) / 2.0 * cells as f64).floor() as i64).clamp(0, cells as i64 - 1)
}

/// Calls `visit` on every offset in `[−s, s]^dim` with max-norm exactly `s`.
fn for_each_shell_offset(dim: usize, s: i64, visit: &mut dyn FnMut(&[i64])) {
    let mut off = vec![-s; dim];
    loop {
        if off.iter().any(|o| o.abs() == s) {
            visit(&off);
        }
        let mut i = 0;
        loop {
            if i == dim {
                return;
            }
            off[i] += 1;
            if off[i] <= s {
                break;
            }
            off[i] = -s;
            i += 1;
        }
    }
}

impl SpatialIndex {
    pub fn new(group: GroupDescriptor, points: Vec<GroupPoint>) -> Self {
        assert!(points.iter().all(|p| p.group() == group), "point from another group");
        let buckets = match group {
            GroupDescriptor::Torus(n) => {
                let cells = cells_for(points.len(), n);
                let mut table = vec![Vec::new(); cells.pow(n as u32)];
                for (i, p) in points.iter().enumerate() {
                    let idx = p
                        .coords()
                        .iter()
                        .rev()
                        .fold(0, |acc, &x| acc * cells + torus_cell(x, cells));
                    table[idx].push(i);
                }
                Buckets::Torus { n, cells, table }
            }
            GroupDescriptor::Su2 => {
                // the sphere meets about cells³ of the cells⁴ ambient boxes
                let cells = cells_for(points.len(), 3).max(2);
                let mut table: HashMap<[i64; 4], Vec<usize>> = HashMap::new();
                for (i, p) in points.iter().enumerate() {
                    let a = p.quat().to_array();
                    let key = a.map(|x| ambient_cell(x, cells));
                    table.entry(key).or_default().push(i);
                }
                Buckets::Su2 { cells, table }
            }
        };
        Self { group, points, buckets }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[GroupPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<GroupPoint> {
        self.points
    }

    /// Index of and distance to the nearest stored point; `None` when empty.
    pub fn nearest(&self, q: &GroupPoint) -> Option<(usize, f64)> {
        if self.points.is_empty() {
            return None;
        }
        assert_eq!(q.group(), self.group, "query from another group");
        match &self.buckets {
            Buckets::Torus { n, cells, table } => Some(self.nearest_torus(q, *n, *cells, table)),
            Buckets::Su2 { cells, table } => Some(self.nearest_su2(q, *cells, table)),
        }
    }

    fn nearest_torus(&self, q: &GroupPoint, n: usize, cells: usize, table: &[Vec<usize>]) -> (usize, f64) {
        let home: Vec<usize> = q.coords().iter().map(|&x| torus_cell(x, cells)).collect();
        let mut best = (usize::MAX, f64::INFINITY);
        let consider = |i: usize, best: &mut (usize, f64)| {
            let d = q.distance(&self.points[i]);
            if d < best.1 || (d == best.1 && i < best.0) {
                *best = (i, d);
            }
        };
        let width = 1.0 / cells as f64;
        let mut s = 0i64;
        loop {
            if 2 * s + 1 >= cells as i64 {
                // the shell wraps onto itself: finish with a full scan
                for i in 0..self.points.len() {
                    consider(i, &mut best);
                }
                return best;
            }
            for_each_shell_offset(n, s, &mut |off| {
                let idx = off.iter().zip(&home).rev().fold(0usize, |acc, (&o, &h)| {
                    acc * cells + (h as i64 + o).rem_euclid(cells as i64) as usize
                });
                for &i in &table[idx] {
                    consider(i, &mut best);
                }
            });
            // any point outside the searched block is at least s·width away
            if best.1 <= s as f64 * width {
                return best;
            }
            s += 1;
        }
    }

    fn nearest_su2(&self, q: &GroupPoint, cells: usize, table: &HashMap<[i64; 4], Vec<usize>>) -> (usize, f64) {
        let qa = q.quat();
        let home = qa.to_array().map(|x| ambient_cell(x, cells));
        let mut best = (usize::MAX, f64::INFINITY);
        let width = 2.0 / cells as f64;
        let mut s = 0i64;
        loop {
            for_each_shell_offset(4, s, &mut |off| {
                let key = [home[0] + off[0], home[1] + off[1], home[2] + off[2], home[3] + off[3]];
                if let Some(ids) = table.get(&key) {
                    for &i in ids {
                        let d = qa.chord(self.points[i].quat());
                        if d < best.1 || (d == best.1 && i < best.0) {
                            best = (i, d);
                        }
                    }
                }
            });
            if best.1 <= s as f64 * width || s >= cells as i64 {
                let (i, _) = best;
                return (i, q.distance(&self.points[i]));
            }
            s += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::haar_sample;
    use crate::seeds::rng;

    fn brute(points: &[GroupPoint], q: &GroupPoint) -> f64 {
        points.iter().map(|p| p.distance(q)).fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn matches_brute_force() {
        for g in [
            GroupDescriptor::Torus(1),
            GroupDescriptor::Torus(2),
            GroupDescriptor::Torus(3),
            GroupDescriptor::Su2,
        ] {
            let mut r = rng(17);
            for count in [1usize, 5, 300] {
                let pts: Vec<_> = (0..count).map(|_| haar_sample(&mut r, g)).collect();
                let index = SpatialIndex::new(g, pts.clone());
                for _ in 0..200 {
                    let q = haar_sample(&mut r, g);
                    let (_, d) = index.nearest(&q).unwrap();
                    assert!((d - brute(&pts, &q)).abs() < 1e-12, "{g} count {count}");
                }
            }
        }
    }

    #[test]
    fn empty_index() {
        let g = GroupDescriptor::Su2;
        assert!(SpatialIndex::new(g, vec![]).nearest(&g.identity()).is_none());
    }

    #[test]
    fn shell_offsets_count() {
        let mut c = 0;
        for_each_shell_offset(3, 2, &mut |_| c += 1);
        assert_eq!(c, 5 * 5 * 5 - 3 * 3 * 3);
        c = 0;
        for_each_shell_offset(2, 0, &mut |_| c += 1);
        assert_eq!(c, 1);
    }
}
