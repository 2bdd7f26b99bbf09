//! Word sets, covering radii, the net-parameter planner and the counting
//! lower bounds on the torus.

use std::collections::{HashMap, HashSet};
use std::f64::consts::{LN_2, PI};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{haar_sample, GroupDescriptor, GroupPoint};
use crate::numeric::{binomial_exact, bisect, unit_ball_volume};
use crate::seeds::rng;
use crate::spatial::SpatialIndex;
use crate::word_measure::Alphabet;

pub const DEFAULT_DEDUP_TOL: f64 = 1e-9;
pub const WORD_SET_CAP: usize = 1_000_000;
pub const PROBE_CAP: usize = 2_000_000;

/// Which words a [`WordSet`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordLength {
    /// Lengths `0..=ℓ`.
    AtMost,
    /// Length exactly `ℓ`.
    Exactly,
}

#[derive(Debug, Clone)]
pub struct WordSet {
    pub group: GroupDescriptor,
    pub ell: usize,
    pub length: WordLength,
    pub dedup_tol: f64,
    /// Distinct values before metric deduplication: integer coefficient
    /// vectors on the torus, reduced words on SU(2).
    pub exact_count: Option<u128>,
    index: SpatialIndex,
}

impl WordSet {
    pub fn points(&self) -> &[GroupPoint] {
        self.index.points()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Distance from `g` to the nearest word.
    pub fn distance_to(&self, g: &GroupPoint) -> f64 {
        self.index.nearest(g).map_or(f64::INFINITY, |(_, d)| d)
    }

    /// A word set from arbitrary points, deduplicated at `dedup_tol`.
    pub fn from_points(group: GroupDescriptor, points: Vec<GroupPoint>, dedup_tol: f64) -> Self {
        let mut dedup = Dedup::new(group, dedup_tol);
        for p in points {
            dedup.insert(p);
        }
        Self {
            group,
            ell: 0,
            length: WordLength::AtMost,
            dedup_tol,
            exact_count: None,
            index: SpatialIndex::new(group, dedup.points),
        }
    }
}

/// Greedy metric deduplication on a hash grid of cell width ≥ `tol`.
struct Dedup {
    group: GroupDescriptor,
    tol: f64,
    width: f64,
    wrap: i64,
    cells: HashMap<Vec<i64>, Vec<usize>>,
    points: Vec<GroupPoint>,
}

impl Dedup {
    fn new(group: GroupDescriptor, tol: f64) -> Self {
        assert!(tol > 0.0, "dedup tolerance must be positive");
        let (width, wrap) = match group {
            GroupDescriptor::Torus(_) => {
                let wrap = (1.0 / tol).floor().max(1.0) as i64;
                (1.0 / wrap as f64, wrap)
            }
            GroupDescriptor::Su2 => (tol, 0),
        };
        Self {
            group,
            tol,
            width,
            wrap,
            cells: HashMap::new(),
            points: Vec::new(),
        }
    }

    fn key(&self, p: &GroupPoint) -> Vec<i64> {
        match p {
            GroupPoint::Torus(x) => x.iter().map(|v| ((v / self.width) as i64).min(self.wrap - 1)).collect(),
            GroupPoint::Su2(q) => q.to_array().iter().map(|v| (v / self.width).floor() as i64).collect(),
        }
    }

    fn neighbours(&self, key: &[i64]) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::with_capacity(key.len())];
        for &c in key {
            let mut next = Vec::with_capacity(out.len() * 3);
            for prefix in &out {
                for d in -1..=1 {
                    let mut v = prefix.clone();
                    v.push(if self.wrap > 0 {
                        (c + d).rem_euclid(self.wrap)
                    } else {
                        c + d
                    });
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Inserts `p` unless a stored point lies within `tol`; returns whether it was new.
    fn insert(&mut self, p: GroupPoint) -> bool {
        debug_assert_eq!(p.group(), self.group);
        let key = self.key(&p);
        for nb in self.neighbours(&key) {
            if let Some(ids) = self.cells.get(&nb) {
                if ids.iter().any(|&i| self.points[i].distance(&p) <= self.tol) {
                    return false;
                }
            }
        }
        self.cells.entry(key).or_default().push(self.points.len());
        self.points.push(p);
        true
    }
}

/// `#{c ∈ Z^k : Σ|cᵢ| = b}` for `b = 0..=ell`.
fn l1_sphere_counts(k: usize, ell: usize) -> Vec<u128> {
    let mut counts = vec![0u128; ell + 1];
    counts[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u128; ell + 1];
        for (b, slot) in next.iter_mut().enumerate() {
            let mut s = counts[b];
            for j in 1..=b {
                s = s.saturating_add(counts[b - j].saturating_mul(2));
            }
            *slot = s;
        }
        counts = next;
    }
    counts
}

/// Number of integer vectors `c ∈ Z^k` realized by abelian words: `Σ|c| ≤ ℓ`
/// for [`WordLength::AtMost`], additionally `Σ|c| ≡ ℓ (mod 2)` for
/// [`WordLength::Exactly`]. For generic generators this is the number of
/// distinct word values.
pub fn coefficient_vector_count(k: usize, ell: usize, length: WordLength) -> u128 {
    l1_sphere_counts(k, ell)
        .into_iter()
        .enumerate()
        .filter(|(b, _)| length == WordLength::AtMost || (ell - b).is_multiple_of(2))
        .fold(0u128, |acc, (_, c)| acc.saturating_add(c))
}

/// Distinct abelian words of length exactly `ℓ` in `k` free commuting
/// generators, found by running through all `(2k)^ℓ` words.
pub fn exhaustive_abelian_count(k: usize, ell: usize) -> Result<u128> {
    let total = (2 * k as u128).checked_pow(ell as u32).unwrap_or(u128::MAX);
    if total > 50_000_000 {
        return Err(Error::ResourceCap {
            what: "exhaustive word enumeration",
            count: total,
            cap: 50_000_000,
        });
    }
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut letters = vec![0usize; ell];
    loop {
        let mut c = vec![0i32; k];
        for &l in &letters {
            c[l / 2] += if l % 2 == 0 { 1 } else { -1 };
        }
        seen.insert(c);
        let mut i = 0;
        loop {
            if i == ell {
                return Ok(seen.len() as u128);
            }
            letters[i] += 1;
            if letters[i] < 2 * k {
                break;
            }
            letters[i] = 0;
            i += 1;
        }
    }
}

/// `C(2k+ℓ−1, ℓ)`: multisets of `ℓ` letters from `2k`.
pub fn binomial_bound(k: usize, ell: usize) -> u128 {
    binomial_exact((2 * k + ell) as u64 - 1, ell as u64).expect("binomial fits in u128")
}

/// Reduced words of length `≤ ℓ` (or `= ℓ`) in the free group on `k` letters.
fn reduced_word_count(k: usize, ell: usize, length: WordLength) -> u128 {
    let at = |j: usize| -> u128 {
        if j == 0 {
            1
        } else {
            (2 * k as u128).saturating_mul((2 * k as u128 - 1).saturating_pow(j as u32 - 1))
        }
    };
    match length {
        WordLength::Exactly => at(ell),
        WordLength::AtMost => (0..=ell).fold(0u128, |acc, j| acc.saturating_add(at(j))),
    }
}

fn cap_error(count: u128, cap: usize) -> Error {
    Error::ResourceCap {
        what: "word set",
        count,
        cap: cap as u128,
    }
}

/// All words of length `≤ ℓ`, deduplicated at `dedup_tol`.
pub fn enumerate_words(alphabet: &Alphabet, ell: usize, dedup_tol: f64) -> Result<WordSet> {
    enumerate_words_with(alphabet, ell, dedup_tol, WordLength::AtMost, WORD_SET_CAP)
}

/// Word enumeration with explicit length mode and size cap. The torus uses
/// integer coefficient vectors; SU(2) expands breadth first.
pub fn enumerate_words_with(
    alphabet: &Alphabet,
    ell: usize,
    dedup_tol: f64,
    length: WordLength,
    cap: usize,
) -> Result<WordSet> {
    match alphabet.group {
        GroupDescriptor::Torus(_) => enumerate_torus(alphabet, ell, dedup_tol, length, cap),
        GroupDescriptor::Su2 => enumerate_words_bfs(alphabet, ell, dedup_tol, length, cap),
    }
}

fn enumerate_torus(alphabet: &Alphabet, ell: usize, tol: f64, length: WordLength, cap: usize) -> Result<WordSet> {
    let group = alphabet.group;
    let k = alphabet.k();
    let count = coefficient_vector_count(k, ell, length);
    if count > cap as u128 {
        return Err(cap_error(count, cap));
    }
    let n = group.dim();
    let gens: Vec<&[f64]> = alphabet.gens.iter().map(|g| g.coords()).collect();
    let mut dedup = Dedup::new(group, tol);
    let mut c = vec![0i64; k];

    fn recurse(i: usize, budget: usize, c: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64], usize), ell: usize) {
        if i == c.len() {
            visit(c, ell - budget);
            return;
        }
        c[i] = 0;
        recurse(i + 1, budget, c, visit, ell);
        for a in 1..=budget as i64 {
            for s in [a, -a] {
                c[i] = s;
                recurse(i + 1, budget - a as usize, c, visit, ell);
            }
        }
        c[i] = 0;
    }

    let mut visit = |c: &[i64], used: usize| {
        if length == WordLength::Exactly && !(ell - used).is_multiple_of(2) {
            return;
        }
        let mut x = vec![0.0; n];
        for (ci, g) in c.iter().zip(&gens) {
            if *ci != 0 {
                for (xj, gj) in x.iter_mut().zip(g.iter()) {
                    *xj += *ci as f64 * gj;
                }
            }
        }
        dedup.insert(GroupPoint::torus(x));
    };
    recurse(0, ell, &mut c, &mut visit, ell);
    Ok(WordSet {
        group,
        ell,
        length,
        dedup_tol: tol,
        exact_count: Some(count),
        index: SpatialIndex::new(group, dedup.points),
    })
}

/// Breadth-first product expansion with metric deduplication, valid for
/// either group. For `AtMost` the frontier holds the words first reached at
/// each length; for `Exactly` it holds all values of the current length.
pub fn enumerate_words_bfs(
    alphabet: &Alphabet,
    ell: usize,
    tol: f64,
    length: WordLength,
    cap: usize,
) -> Result<WordSet> {
    let group = alphabet.group;
    let letters = alphabet.letters();
    let projected = reduced_word_count(alphabet.k(), ell, length);
    let mut all = Dedup::new(group, tol);
    all.insert(group.identity());
    let mut frontier = vec![group.identity()];
    for _ in 0..ell {
        let mut layer = Dedup::new(group, tol);
        let mut next = Vec::new();
        for w in &frontier {
            for a in &letters {
                let p = w.multiply(a);
                match length {
                    WordLength::AtMost => {
                        if all.insert(p.clone()) {
                            next.push(p);
                        }
                    }
                    WordLength::Exactly => {
                        if layer.insert(p.clone()) {
                            next.push(p);
                        }
                    }
                }
                if all.points.len() > cap || layer.points.len() > cap {
                    return Err(cap_error(projected, cap));
                }
            }
        }
        frontier = next;
    }
    let points = match length {
        WordLength::AtMost => all.points,
        WordLength::Exactly => frontier,
    };
    let exact_count = match group {
        GroupDescriptor::Torus(_) => Some(coefficient_vector_count(alphabet.k(), ell, length)),
        GroupDescriptor::Su2 => Some(projected),
    };
    Ok(WordSet {
        group,
        ell,
        length,
        dedup_tol: tol,
        exact_count,
        index: SpatialIndex::new(group, points),
    })
}

/// Probe-based covering-radius estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    /// `max_probe min_word d(probe, word)`: never above the true radius.
    pub radius: f64,
    pub probes: usize,
    /// Torus: every point lies within this distance of a probe, so the true
    /// radius is at most `radius + mesh`. SU(2): radius of a geodesic ball
    /// of volume `vol · ln(N)/N`, the typical hole of `N` Haar probes (an
    /// estimate, not a guarantee).
    pub mesh: f64,
    pub mesh_is_bound: bool,
    pub worst_probe: usize,
}

/// Probe count used when checking nets at scale `r`.
pub fn default_probes(group: GroupDescriptor, r: f64) -> usize {
    let raw = match group {
        GroupDescriptor::Torus(n) => 10.0 * (1.0 / r).powi(n as i32),
        GroupDescriptor::Su2 => 10.0 * (PI / r).powi(3),
    };
    if raw > PROBE_CAP as f64 {
        log::warn!("probe count {raw:.0} capped at {PROBE_CAP}");
    }
    (raw.ceil() as usize).clamp(1, PROBE_CAP)
}

fn su2_ball_volume(rho: f64) -> f64 {
    PI * (2.0 * rho - (2.0 * rho).sin())
}

fn probe_points(group: GroupDescriptor, probes: usize, seed: u64) -> (Vec<GroupPoint>, f64, bool) {
    let mut r = rng(seed);
    match group {
        GroupDescriptor::Torus(n) => {
            let per_axis = ((probes as f64).powf(1.0 / n as f64).ceil() as usize).max(1);
            let h = 1.0 / per_axis as f64;
            let shift: Vec<f64> = (0..n).map(|_| r.random::<f64>() * h).collect();
            let total = per_axis.pow(n as u32);
            let pts = (0..total)
                .map(|mut idx| {
                    let mut x = vec![0.0; n];
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj = (idx % per_axis) as f64 * h + shift[j];
                        idx /= per_axis;
                    }
                    GroupPoint::torus(x)
                })
                .collect();
            (pts, 0.5 * h * (n as f64).sqrt(), true)
        }
        GroupDescriptor::Su2 => {
            let pts: Vec<_> = (0..probes).map(|_| haar_sample(&mut r, group)).collect();
            let target = group.vol() * (probes.max(2) as f64).ln() / probes.max(1) as f64;
            let mesh = if target >= group.vol() {
                PI
            } else {
                bisect(0.0, PI, |rho| su2_ball_volume(rho) - target)
            };
            (pts, mesh, false)
        }
    }
}

pub fn covering_radius(words: &WordSet, probes: usize, seed: u64) -> CoverReport {
    assert!(!words.is_empty(), "covering radius of an empty set");
    let (pts, mesh, mesh_is_bound) = probe_points(words.group, probes, seed);
    let dists: Vec<f64> = pts.par_iter().map(|p| words.distance_to(p)).collect();
    let (worst_probe, radius) =
        dists.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, d)| if d > best.1 { (i, d) } else { best },
        );
    CoverReport {
        radius,
        probes: pts.len(),
        mesh,
        mesh_is_bound,
        worst_probe,
    }
}

/// True iff every probe lies within `2r` of the word set.
pub fn net_check(words: &WordSet, r: f64, probes: usize, seed: u64) -> bool {
    assert!(r > 0.0, "net radius must be positive");
    covering_radius(words, probes, seed).radius <= 2.0 * r
}

/// Exact covering radius of a finite subset of the circle.
pub fn circle_covering_radius(points: &[f64]) -> f64 {
    assert!(!points.is_empty());
    let mut xs: Vec<f64> = points.iter().map(|&x| crate::group::wrap_unit(x)).collect();
    xs.sort_by(f64::total_cmp);
    let mut gap = 1.0 - xs[xs.len() - 1] + xs[0];
    for w in xs.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap / 2.0
}

/// Parameters for the net statement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetPlan {
    pub n: usize,
    pub r: f64,
    pub delta: f64,
    pub cg: f64,
    /// Root of `ε sqrt(5 ln(C_G/εⁿ)) = r` on the increasing branch.
    pub epsilon: f64,
    pub residual: f64,
    pub k_min: u64,
    pub ell_min: u64,
}

pub fn plan_net_parameters(n: usize, r: f64, delta: f64, cg: f64) -> Result<NetPlan> {
    if n == 0 {
        return Err(Error::invalid("n", "dimension must be at least 1"));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::invalid("r", format!("{r} not in (0, 1)")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", format!("{delta} not in (0, 1)")));
    }
    if cg <= 0.0 {
        return Err(Error::invalid("cg", "must be positive"));
    }
    let nf = n as f64;
    let f = |e: f64| {
        if e <= 0.0 {
            -r
        } else {
            e * (5.0 * (cg.ln() - nf * e.ln())).max(0.0).sqrt() - r
        }
    };
    // ε√(5 ln(C/εⁿ)) increases up to C^{1/n} e^{−1/2}
    let peak = (cg.ln() / nf - 0.5).exp();
    let hi = peak.min(r);
    if f(hi) < 0.0 {
        return Err(Error::NoRoot(format!(
            "ε√(5 ln(C_G/εⁿ)) stays below r = {r} on (0, {hi:.6}] for n = {n}, C_G = {cg}"
        )));
    }
    let epsilon = bisect(0.0, hi, f);
    let k_min = (cg + 16.0 * LN_2 * (nf * (1.0 / epsilon).ln() + (1.0 / delta).ln())).ceil();
    let ell_min = (cg + nf / 2.0 * (1.0 / (epsilon * r)).log2()).ceil();
    Ok(NetPlan {
        n,
        r,
        delta,
        cg,
        epsilon,
        residual: f(epsilon),
        k_min: k_min.max(1.0) as u64,
        ell_min: ell_min.max(1.0) as u64,
    })
}

/// Outcome of checking the net property for `A^{≤ℓ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NetVerdict {
    Net,
    NotNet,
    /// Enumeration hit the size cap before a certificate was found.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetCertificate {
    pub verdict: NetVerdict,
    /// Length at which the check was decided (or abandoned).
    pub ell_used: usize,
    pub points: usize,
    pub cover: Option<CoverReport>,
}

/// Checks whether `A^{≤ℓ}` is a `2r`-net using the shortest sufficient
/// length: `A^{≤ℓ'} ⊆ A^{≤ℓ}` for `ℓ' ≤ ℓ`, so a net at `ℓ'` certifies `ℓ`.
pub fn net_certificate(alphabet: &Alphabet, r: f64, ell: usize, probes: usize, seed: u64) -> Result<NetCertificate> {
    let mut last = None;
    for ell_used in 0..=ell {
        let words = match enumerate_words(alphabet, ell_used, DEFAULT_DEDUP_TOL) {
            Ok(w) => w,
            Err(Error::ResourceCap { .. }) => {
                return Ok(NetCertificate {
                    verdict: NetVerdict::Inconclusive,
                    ell_used,
                    points: 0,
                    cover: last,
                })
            }
            Err(e) => return Err(e),
        };
        let cover = covering_radius(&words, probes, seed);
        last = Some(cover);
        if cover.radius <= 2.0 * r {
            return Ok(NetCertificate {
                verdict: NetVerdict::Net,
                ell_used,
                points: words.len(),
                cover: last,
            });
        }
        if ell_used == ell {
            return Ok(NetCertificate {
                verdict: NetVerdict::NotNet,
                ell_used,
                points: words.len(),
                cover: last,
            });
        }
    }
    unreachable!("loop returns at ell_used == ell")
}

/// Counting bounds for words in a commutative group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub n: usize,
    pub r: f64,
    pub m: u64,
    pub k: Option<u64>,
    pub ell: Option<u64>,
    /// `C(2k+ℓ−1, ℓ)`.
    pub binom_bound: Option<u128>,
    /// Distinct values of length-`ℓ` words with generic generators.
    pub exact_count: Option<u128>,
    /// `C(m−1, ℓ)(2r)ⁿ vol(Bₙ)`; a net needs this to be at least 1.
    pub volume_product: Option<f64>,
    pub volume_condition_met: Option<bool>,
    /// `n ln(1/r) / (2 ln m)`.
    pub k_lower: f64,
    /// Bound on `ℓ` from the large-`n` estimate on `ℓ + 1`.
    pub ell_lower: f64,
    /// Companion bound `(2 ln(1 + ln 3/2))^{−1}(n ln(1/r) − ln ln(1/r))` on `k`.
    pub k_lower_large_n: f64,
    /// `ℓ ≤ k ≤ 2ℓ`, assumed by the large-`n` estimates.
    pub ell_k_constraint: Option<bool>,
}

fn base_bounds(n: usize, r: f64, m: u64) -> Result<LowerBoundReport> {
    if !(r > 0.0 && r < 0.5) {
        return Err(Error::invalid("r", format!("{r} not in (0, 1/2)")));
    }
    if m < 2 {
        return Err(Error::invalid("m", "needs m ≥ 2"));
    }
    let nf = n as f64;
    let lr = (1.0 / r).ln();
    let core = nf * lr - lr.ln();
    let c = (1.0 + 1.5f64.ln()).ln();
    Ok(LowerBoundReport {
        n,
        r,
        m,
        k: None,
        ell: None,
        binom_bound: None,
        exact_count: None,
        volume_product: None,
        volume_condition_met: None,
        k_lower: nf * lr / (2.0 * (m as f64).ln()),
        ell_lower: core / c - 1.0,
        k_lower_large_n: core / (2.0 * c),
        ell_k_constraint: None,
    })
}

/// Bounds that depend only on `m = 2k + ℓ`.
pub fn lower_bounds_for_m(n: usize, r: f64, m: u64) -> Result<LowerBoundReport> {
    base_bounds(n, r, m)
}

pub fn abelian_lower_bounds(n: usize, r: f64, k: u64, ell: u64) -> Result<LowerBoundReport> {
    if k == 0 {
        return Err(Error::invalid("k", "needs k ≥ 1"));
    }
    let m = 2 * k + ell;
    let mut rep = base_bounds(n, r, m)?;
    let binom = binomial_exact(m - 1, ell);
    let volume = binom.map(|b| b as f64 * (2.0 * r).powi(n as i32) * unit_ball_volume(n));
    rep.k = Some(k);
    rep.ell = Some(ell);
    rep.binom_bound = binom;
    rep.exact_count = Some(coefficient_vector_count(k as usize, ell as usize, WordLength::Exactly));
    rep.volume_product = volume;
    rep.volume_condition_met = volume.map(|v| v >= 1.0);
    rep.ell_k_constraint = Some(ell <= k && k <= 2 * ell);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_measure::build_alphabet;

    fn torus_alphabet(gens: &[&[f64]]) -> Alphabet {
        let n = gens[0].len();
        Alphabet::from_generators(
            GroupDescriptor::Torus(n),
            gens.iter().map(|g| GroupPoint::torus(g.iter().copied())).collect(),
        )
    }

    #[test]
    fn length_zero_is_identity() {
        for g in [GroupDescriptor::Torus(2), GroupDescriptor::Su2] {
            let a = build_alphabet(1, 3, g);
            let w = enumerate_words(&a, 0, DEFAULT_DEDUP_TOL).unwrap();
            assert_eq!(w.len(), 1);
            assert!(w.points()[0].distance(&g.identity()) < 1e-15);
        }
    }

    #[test]
    fn torus_counts_k2_l2() {
        let a = build_alphabet(4, 2, GroupDescriptor::Torus(2));
        assert_eq!(enumerate_words(&a, 2, DEFAULT_DEDUP_TOL).unwrap().len(), 13);
        let exact = enumerate_words_with(&a, 2, DEFAULT_DEDUP_TOL, WordLength::Exactly, WORD_SET_CAP).unwrap();
        assert_eq!(exact.len(), 9);
        assert_eq!(binomial_exact(5, 2), Some(10));
    }

    #[test]
    fn coefficient_counts_match_exhaustive() {
        for k in 1..=4 {
            for ell in 0..=4 {
                assert_eq!(
                    coefficient_vector_count(k, ell, WordLength::Exactly),
                    exhaustive_abelian_count(k, ell).unwrap()
                );
            }
        }
    }

    #[test]
    fn fast_path_matches_bfs() {
        let a = build_alphabet(8, 3, GroupDescriptor::Torus(2));
        for length in [WordLength::AtMost, WordLength::Exactly] {
            let fast = enumerate_words_with(&a, 4, DEFAULT_DEDUP_TOL, length, WORD_SET_CAP).unwrap();
            let bfs = enumerate_words_bfs(&a, 4, DEFAULT_DEDUP_TOL, length, WORD_SET_CAP).unwrap();
            assert_eq!(fast.len(), bfs.len());
            for p in bfs.points() {
                assert!(fast.distance_to(p) <= 1e-9);
            }
        }
    }

    #[test]
    fn rational_generator_collapses() {
        let a = torus_alphabet(&[&[1.0 / 3.0]]);
        let w = enumerate_words(&a, 10, DEFAULT_DEDUP_TOL).unwrap();
        assert_eq!(w.len(), 3);
        assert!(!net_check(&w, 0.05, 1000, 1));
        let rep = covering_radius(&w, 10_000, 1);
        assert!((rep.radius - 1.0 / 6.0).abs() <= rep.mesh);
    }

    #[test]
    fn su2_words_are_separated_and_capped() {
        let a = build_alphabet(2, 2, GroupDescriptor::Su2);
        let w = enumerate_words(&a, 3, DEFAULT_DEDUP_TOL).unwrap();
        // free group on 2 generators: 1 + 4 + 12 + 36 reduced words
        assert_eq!(w.len(), 53);
        assert_eq!(w.exact_count, Some(53));
        let err = enumerate_words_with(&a, 6, DEFAULT_DEDUP_TOL, WordLength::AtMost, 100).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { count: 1457, .. }), "{err}");
    }

    #[test]
    fn identity_covering_radius_on_circle() {
        let w = WordSet::from_points(GroupDescriptor::Torus(1), vec![GroupPoint::torus([0.0])], 1e-9);
        let rep = covering_radius(&w, 1000, 3);
        assert!((rep.radius - 0.5).abs() <= rep.mesh);
    }

    #[test]
    fn circle_radius_matches_sorted_gaps() {
        let alpha = 2f64.sqrt() - 1.0;
        let a = torus_alphabet(&[&[alpha]]);
        let w = enumerate_words(&a, 50, DEFAULT_DEDUP_TOL).unwrap();
        assert_eq!(w.len(), 101);
        let xs: Vec<f64> = w.points().iter().map(|p| p.coords()[0]).collect();
        let exact = circle_covering_radius(&xs);
        let rep = covering_radius(&w, 100_000, 9);
        assert!(rep.radius <= exact + 1e-15 && exact <= rep.radius + rep.mesh);
    }

    #[test]
    fn more_points_never_increase_radius() {
        let g = GroupDescriptor::Su2;
        let a = build_alphabet(5, 3, g);
        let small = enumerate_words(&a, 2, DEFAULT_DEDUP_TOL).unwrap();
        let big = enumerate_words(&a, 3, DEFAULT_DEDUP_TOL).unwrap();
        let r1 = covering_radius(&small, 20_000, 4).radius;
        let r2 = covering_radius(&big, 20_000, 4).radius;
        assert!(r2 <= r1);
    }

    #[test]
    fn large_radius_is_always_a_net() {
        for g in [GroupDescriptor::Torus(2), GroupDescriptor::Su2] {
            let w = WordSet::from_points(g, vec![g.identity()], 1e-9);
            assert!(net_check(&w, g.diameter() / 2.0, 5000, 1));
        }
    }

    #[test]
    fn planner_residual_and_monotonicity() {
        let p = plan_net_parameters(2, 0.05, 0.1, 1.0).unwrap();
        assert!(p.epsilon < p.r && p.residual.abs() < 1e-12);
        let q = plan_net_parameters(2, 0.025, 0.1, 1.0).unwrap();
        assert!(q.epsilon < p.epsilon && q.k_min > p.k_min && q.ell_min > p.ell_min);
        assert!(matches!(plan_net_parameters(1, 0.99, 0.1, 1.0), Err(Error::NoRoot(_))));
    }

    #[test]
    fn ell_min_follows_log_formula() {
        for n in [1usize, 2, 4] {
            let p = plan_net_parameters(n, 0.02, 0.1, 1.5).unwrap();
            let expect = (1.5 + n as f64 / 2.0 * (1.0 / (p.epsilon * p.r)).log2()).ceil() as u64;
            assert_eq!(p.ell_min, expect);
        }
    }

    #[test]
    fn lower_bound_arithmetic() {
        let rep = lower_bounds_for_m(2, 0.01, 40).unwrap();
        assert!((rep.k_lower - 100f64.ln() / 40f64.ln()).abs() < 1e-14);
        assert!((rep.k_lower - 1.248).abs() < 1e-3);
        let rep = abelian_lower_bounds(2, 0.1, 2, 2).unwrap();
        assert_eq!(rep.binom_bound, Some(10));
        assert_eq!(rep.exact_count, Some(9));
        assert_eq!(rep.m, 6);
        assert_eq!(rep.ell_k_constraint, Some(true));
        assert!(abelian_lower_bounds(2, 0.6, 2, 2).is_err());
    }
}
