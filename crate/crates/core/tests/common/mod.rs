//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here calls into the library's neighbor search or metric code;
//! everything is plain loops over coordinate arrays.

#![allow(dead_code)]

use clgd::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec3> {
    (0..n).map(|_| Vec3::new(rng.random(), rng.random(), rng.random())).collect()
}

pub fn random_cloud(rng: &mut ChaCha8Rng, n: usize) -> PointCloud {
    PointCloud::new(random_points(rng, n)).unwrap()
}

fn d2(a: &Vec3, b: &Vec3) -> f64 {
    let (x, y, z) = (a.x - b.x, a.y - b.y, a.z - b.z);
    x * x + y * y + z * z
}

/// The `k` closest points, ordered by (squared distance, index).
pub fn brute_knn(cloud: &[Vec3], q: &Vec3, k: usize) -> Vec<(f64, usize)> {
    let mut all: Vec<(f64, usize)> = cloud.iter().enumerate().map(|(i, p)| (d2(q, p), i)).collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    all.truncate(k);
    all
}

/// Everything the oracle knows about one reference point.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRef {
    pub d: f64,
    pub s: f64,
    /// Neighbor indices in the other cloud, by rank.
    pub neighbors: Vec<usize>,
    /// Signs of the four components of g(other) − g(selected).
    pub signs: [i8; 4],
}

fn field(cloud: &[Vec3], q: &Vec3, nb: &[(f64, usize)], w: &[f64]) -> [f64; 4] {
    let mut out = [0.0; 4];
    let mut total = 0.0;
    for (&(dd, i), &wk) in nb.iter().zip(w) {
        let p = &cloud[i];
        total += wk;
        out[0] += wk * dd.sqrt();
        out[1] += wk * (q.x - p.x);
        out[2] += wk * (q.y - p.y);
        out[3] += wk * (q.z - p.z);
    }
    out.map(|c| c / total)
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// O(M·N·K) CLGD with references seeded by `selected`.
pub fn clgd_oracle(
    selected: &[Vec3],
    other: &[Vec3],
    refs: &[Vec3],
    k: usize,
    beta: f64,
    epsilon: f64,
) -> (f64, Vec<OracleRef>) {
    let mut per = Vec::with_capacity(refs.len());
    let mut total = 0.0;
    for q in refs {
        let nb1 = brute_knn(selected, q, k);
        let w: Vec<f64> = nb1.iter().map(|&(dd, _)| 1.0 / dd.max(epsilon)).collect();
        let g1 = field(selected, q, &nb1, &w);
        let nb2 = brute_knn(other, q, k);
        let g2 = field(other, q, &nb2, &w);
        let mut d = 0.0;
        let mut signs = [0i8; 4];
        for c in 0..4 {
            d += (g2[c] - g1[c]).abs();
            signs[c] = sign(g2[c] - g1[c]);
        }
        let s = (-beta * d).exp();
        total += s * d;
        per.push(OracleRef {
            d,
            s,
            neighbors: nb2.iter().map(|&(_, i)| i).collect(),
            signs,
        });
    }
    (total / refs.len() as f64, per)
}

/// Finite differences of the frozen-score CLGD over coordinates of the
/// other cloud. Only references whose neighborhood contains the perturbed
/// point, or could gain it within ±h, are recomputed; every other term is
/// unaffected by the perturbation.
pub struct ClgdFd<'a> {
    selected: &'a [Vec3],
    other: &'a [Vec3],
    refs: &'a [Vec3],
    k: usize,
    base: Vec<OracleRef>,
    kth: Vec<f64>,
}

impl<'a> ClgdFd<'a> {
    pub fn new(selected: &'a [Vec3], other: &'a [Vec3], refs: &'a [Vec3], k: usize, beta: f64) -> Self {
        let base = clgd_oracle(selected, other, refs, k, beta, clgd::metric::DEFAULT_EPSILON).1;
        let kth = refs.iter().map(|q| brute_knn(other, q, k)[k - 1].0.sqrt()).collect();
        Self { selected, other, refs, k, base, kth }
    }

    /// `None` when a neighbor set, an ℓ1 sign or a near-zero distance changes
    /// within ±h.
    pub fn derivative(&self, point: usize, axis: usize, h: f64) -> Option<f64> {
        let p = self.other[point];
        let mut plus = self.other.to_vec();
        let mut minus = self.other.to_vec();
        plus[point][axis] += h;
        minus[point][axis] -= h;
        let eps = clgd::metric::DEFAULT_EPSILON;
        let mut diff = 0.0;
        for (m, q) in self.refs.iter().enumerate() {
            let dist = d2(q, &p).sqrt();
            if !self.base[m].neighbors.contains(&point) && (dist - self.kth[m]).abs() > 2.0 * h {
                continue;
            }
            // An exact zero is symmetric under ±h and matches the zero
            // subgradient; a near-zero distance is a kink inside the stencil.
            if dist > 0.0 && dist < 1e3 * h {
                return None;
            }
            let r = std::slice::from_ref(q);
            let rp = &clgd_oracle(self.selected, &plus, r, self.k, 0.0, eps).1[0];
            let rm = &clgd_oracle(self.selected, &minus, r, self.k, 0.0, eps).1[0];
            if rp.neighbors != rm.neighbors || rp.signs != rm.signs || rp.signs.contains(&0) {
                return None;
            }
            diff += self.base[m].s * (rp.d - rm.d);
        }
        Some(diff / (self.refs.len() as f64 * 2.0 * h))
    }
}

fn nearest(cloud: &[Vec3], q: &Vec3) -> (f64, usize) {
    brute_knn(cloud, q, 1)[0]
}

/// Chamfer as the sum of both mean nearest distances, with the assignment.
pub fn chamfer_oracle(a: &[Vec3], b: &[Vec3]) -> (f64, Vec<usize>, Vec<usize>) {
    let ab: Vec<(f64, usize)> = a.iter().map(|p| nearest(b, p)).collect();
    let ba: Vec<(f64, usize)> = b.iter().map(|p| nearest(a, p)).collect();
    let value = ab.iter().map(|x| x.0.sqrt()).sum::<f64>() / a.len() as f64
        + ba.iter().map(|x| x.0.sqrt()).sum::<f64>() / b.len() as f64;
    (value, ab.iter().map(|x| x.1).collect(), ba.iter().map(|x| x.1).collect())
}

/// Central difference of Chamfer over one coordinate of `moving`, `None` on
/// an assignment flip.
pub fn chamfer_fd(fixed: &[Vec3], moving: &[Vec3], point: usize, axis: usize, h: f64) -> Option<f64> {
    let eval = |delta: f64| {
        let mut m = moving.to_vec();
        m[point][axis] += delta;
        chamfer_oracle(fixed, &m)
    };
    let (vp, ap, bp) = eval(h);
    let (vm, am, bm) = eval(-h);
    (ap == am && bp == bm).then(|| (vp - vm) / (2.0 * h))
}

/// Double loop over all pairs, self excluded.
pub fn smoothness_oracle(flow: &[Vec3], src: &[Vec3], ks: usize) -> f64 {
    let n = src.len();
    let mut total = 0.0;
    for x in 0..n {
        let mut others: Vec<(f64, usize)> = (0..n).filter(|&j| j != x).map(|j| (d2(&src[x], &src[j]), j)).collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, j) in others.iter().take(ks) {
            total += (flow[x] - flow[j]).norm_squared();
        }
    }
    total / (3.0 * n as f64 * ks as f64)
}

/// Minimum mean matched distance over every permutation (Heap's algorithm).
pub fn emd_permutations(a: &[Vec3], b: &[Vec3]) -> f64 {
    let n = a.len();
    let cost: Vec<Vec<f64>> = a.iter().map(|p| b.iter().map(|q| d2(p, q).sqrt()).collect()).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let score = |perm: &[usize]| perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum::<f64>();
    let mut best = score(&perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(score(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best / n as f64
}

/// Relative agreement with a floor for components that are zero in both.
pub fn agrees(fd: f64, analytic: f64, rel: f64) -> bool {
    let scale = fd.abs().max(analytic.abs());
    scale < 1e-10 || (fd - analytic).abs() <= rel * scale
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
