//! Directional distances and the calibrated local geometry distance.
//!
//! For a reference point `q` and a cloud `P`, the directional distance is the
//! 4-vector `g(q, P) = [f ‖ v]` where
//!
//! ```text
//! f = Σ w_k ‖q − p_k‖ / Σ w_k        v = Σ w_k (q − p_k) / Σ w_k
//! ```
//!
//! over the `K` nearest points `p_k` of `q` in `P`, sorted by distance, with
//! `w_k = 1 / max(‖q − p_k‖², ε)`. The weights always come from the cloud that
//! seeded the reference set and are applied rank by rank to the other cloud.
//! Per reference, `d = ‖g(q, P1) − g(q, P2)‖₁` and `s = exp(−β d)`; the metric
//! is `(1/M) Σ s·d`.
//!
//! Gradients with respect to the moving cloud hold neighbor memberships,
//! weights and confidence scores fixed, and use subgradient 0 where an ℓ1
//! component is exactly zero.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::pcore::{PointCloud, SpatialIndex};
use crate::reference::{generate_references, ReferenceParams, ReferenceSet, Selected};
use crate::{Error, Result, Vec3};

pub const DEFAULT_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClgdParams {
    /// Neighborhood size `K`.
    pub k: usize,
    /// Confidence sharpness `β`; 0 weighs every reference equally.
    pub beta: f64,
    /// Floor on squared distances inside the inverse-square weights.
    pub epsilon: f64,
    pub reference: ReferenceParams,
    /// Average both directions (each cloud seeding its own reference set).
    pub symmetrize: bool,
}

impl Default for ClgdParams {
    fn default() -> Self {
        Self {
            k: 5,
            beta: 0.0,
            epsilon: DEFAULT_EPSILON,
            reference: ReferenceParams::default(),
            symmetrize: false,
        }
    }
}

impl ClgdParams {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::param("k", "must be at least 1"));
        }
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return Err(Error::param("beta", "must be finite and non-negative"));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::param("epsilon", "must be positive"));
        }
        self.reference.validate()
    }
}

/// The 4-vector `[f ‖ v]` describing local surface geometry around a probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalDistance {
    /// Approximate unsigned distance to the underlying surface.
    pub f: f64,
    /// Approximate offset from the closest surface point to the probe.
    pub v: Vec3,
}

impl DirectionalDistance {
    pub fn l1_distance(&self, other: &DirectionalDistance) -> f64 {
        (self.f - other.f).abs()
            + (self.v.x - other.v.x).abs()
            + (self.v.y - other.v.y).abs()
            + (self.v.z - other.v.z).abs()
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.f, self.v.x, self.v.y, self.v.z]
    }
}

/// Scalar result of a metric evaluation plus optional per-reference detail.
#[derive(Debug, Clone, PartialEq)]
pub struct ClgdReport {
    pub value: f64,
    /// `d(q_m, P1, P2)` per reference point.
    pub per_reference: Option<Vec<f64>>,
    /// `s(q_m)` per reference point.
    pub scores: Option<Vec<f64>>,
}

/// The weights `g(q, P)` would use on its own: `1 / max(‖q − p_k‖², ε)` over
/// the sorted neighborhood.
pub fn calibration_weights(q: &Vec3, index: &SpatialIndex, k: usize, epsilon: f64) -> Result<Vec<f64>> {
    let mut nb = Vec::with_capacity(k);
    index.knn_into(q, k, &mut nb)?;
    let mut w = Vec::with_capacity(k);
    inverse_square_weights(&nb, epsilon, &mut w);
    Ok(w)
}

fn inverse_square_weights(neighbors: &[(f64, usize)], epsilon: f64, out: &mut Vec<f64>) {
    out.clear();
    out.extend(neighbors.iter().map(|&(d2, _)| 1.0 / d2.max(epsilon)));
}

/// Weighted averages over a sorted neighborhood. `neighbors` holds
/// `(squared distance, index)` pairs and `weights` is rank-aligned with it.
fn weighted_field(q: &Vec3, index: &SpatialIndex, neighbors: &[(f64, usize)], weights: &[f64]) -> DirectionalDistance {
    let mut sum_w = 0.0;
    let mut f = 0.0;
    let mut v = Vec3::zeros();
    for (&(d2, i), &w) in neighbors.iter().zip(weights) {
        sum_w += w;
        f += w * d2.sqrt();
        v += (q - index.point(i)) * w;
    }
    DirectionalDistance {
        f: f / sum_w,
        v: v / sum_w,
    }
}

/// `g(q, P)` over the cloud behind `index`.
///
/// Without `weights`, inverse-square weights are computed from this cloud's
/// own neighborhood. With `weights`, they are used verbatim against the
/// sorted neighborhood, rank by rank.
pub fn directional_distance(
    q: &Vec3,
    index: &SpatialIndex,
    k: usize,
    weights: Option<&[f64]>,
) -> Result<DirectionalDistance> {
    directional_distance_with_epsilon(q, index, k, weights, DEFAULT_EPSILON)
}

pub fn directional_distance_with_epsilon(
    q: &Vec3,
    index: &SpatialIndex,
    k: usize,
    weights: Option<&[f64]>,
    epsilon: f64,
) -> Result<DirectionalDistance> {
    let mut nb = Vec::with_capacity(k);
    index.knn_into(q, k, &mut nb)?;
    match weights {
        Some(w) => {
            if w.len() != k {
                return Err(Error::SizeMismatch {
                    left: k,
                    right: w.len(),
                });
            }
            if w.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) || w.iter().sum::<f64>() <= 0.0 {
                return Err(Error::param("weights", "must be finite, non-negative and not all zero"));
            }
            Ok(weighted_field(q, index, &nb, w))
        }
        None => {
            let mut w = Vec::with_capacity(k);
            inverse_square_weights(&nb, epsilon, &mut w);
            Ok(weighted_field(q, index, &nb, &w))
        }
    }
}

/// Everything about a reference set that depends only on the cloud that
/// seeded it: per-reference weights and directional distances.
///
/// Solvers keep one of these for the static cloud and evaluate the moving
/// cloud against it every iteration.
#[derive(Debug, Clone)]
pub struct CalibratedField {
    refs: Vec<Vec3>,
    weights: Vec<f64>,
    fields: Vec<DirectionalDistance>,
    k: usize,
    beta: f64,
}

impl CalibratedField {
    pub fn new(selected: &PointCloud, refs: &ReferenceSet, params: &ClgdParams) -> Result<Self> {
        params.validate()?;
        if !refs.is_from(selected) {
            return Err(Error::ReferenceMismatch);
        }
        let k = params.k;
        if k > selected.len() {
            return Err(Error::InvalidK { k, n: selected.len() });
        }
        let index = SpatialIndex::new(selected);
        let per_ref: Vec<(Vec<f64>, DirectionalDistance)> = refs
            .points()
            .par_iter()
            .map_init(
                || Vec::with_capacity(k),
                |nb, q| {
                    index.knn_into(q, k, nb).expect("k checked above");
                    let mut w = Vec::with_capacity(k);
                    inverse_square_weights(nb, params.epsilon, &mut w);
                    let g = weighted_field(q, &index, nb, &w);
                    (w, g)
                },
            )
            .collect();
        let mut weights = Vec::with_capacity(refs.len() * k);
        let mut fields = Vec::with_capacity(refs.len());
        for (w, g) in per_ref {
            weights.extend(w);
            fields.push(g);
        }
        Ok(Self {
            refs: refs.points().to_vec(),
            weights,
            fields,
            k,
            beta: params.beta,
        })
    }

    pub fn len(&self) -> usize {
        self.refs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.refs.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set_beta(&mut self, beta: f64) {
        self.beta = beta;
    }

    fn check(&self, other: &PointCloud) -> Result<()> {
        if self.k > other.len() {
            return Err(Error::InvalidK {
                k: self.k,
                n: other.len(),
            });
        }
        Ok(())
    }

    /// Per-reference `d` against `other`.
    fn differences(&self, index: &SpatialIndex) -> Vec<f64> {
        let k = self.k;
        (0..self.refs.len())
            .into_par_iter()
            .map_init(
                || Vec::with_capacity(k),
                |nb, m| {
                    let q = &self.refs[m];
                    index.knn_into(q, k, nb).expect("k checked");
                    let g = weighted_field(q, index, nb, &self.weights[m * k..(m + 1) * k]);
                    self.fields[m].l1_distance(&g)
                },
            )
            .collect()
    }

    pub fn report(&self, other: &PointCloud) -> Result<ClgdReport> {
        self.check(other)?;
        let index = SpatialIndex::new(other);
        let d = self.differences(&index);
        let s: Vec<f64> = d.iter().map(|&d| (-self.beta * d).exp()).collect();
        let value = s.iter().zip(&d).map(|(s, d)| s * d).sum::<f64>() / d.len() as f64;
        Ok(ClgdReport {
            value,
            per_reference: Some(d),
            scores: Some(s),
        })
    }

    pub fn value(&self, other: &PointCloud) -> Result<f64> {
        Ok(self.report(other)?.value)
    }

    /// Metric value and its gradient with respect to every point of `moving`.
    pub fn gradient(&self, moving: &PointCloud) -> Result<(f64, Vec<Vec3>)> {
        self.check(moving)?;
        let index = SpatialIndex::new(moving);
        let k = self.k;
        let m_total = self.refs.len() as f64;
        let contributions: Vec<(f64, Vec<(usize, Vec3)>)> = (0..self.refs.len())
            .into_par_iter()
            .map_init(
                || Vec::with_capacity(k),
                |nb, m| {
                    let q = &self.refs[m];
                    index.knn_into(q, k, nb).expect("k checked");
                    let w = &self.weights[m * k..(m + 1) * k];
                    let g = weighted_field(q, &index, nb, w);
                    let fixed = &self.fields[m];
                    let d = fixed.l1_distance(&g);
                    let s = (-self.beta * d).exp();
                    let scale = s / m_total;
                    let sum_w: f64 = w.iter().sum();
                    let sf = sign(g.f - fixed.f);
                    let sv = Vec3::new(sign(g.v.x - fixed.v.x), sign(g.v.y - fixed.v.y), sign(g.v.z - fixed.v.z));
                    let grads = nb
                        .iter()
                        .zip(w)
                        .map(|(&(d2, i), &wk)| {
                            let wn = wk / sum_w;
                            let dist = d2.sqrt();
                            let radial = if dist > 0.0 {
                                (index.point(i) - q) * (sf / dist)
                            } else {
                                Vec3::zeros()
                            };
                            (i, (radial - sv) * (wn * scale))
                        })
                        .collect();
                    (s * d, grads)
                },
            )
            .collect();
        let mut grad = vec![Vec3::zeros(); moving.len()];
        let mut total = 0.0;
        for (v, gs) in contributions {
            total += v;
            for (i, g) in gs {
                grad[i] += g;
            }
        }
        Ok((total / m_total, grad))
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// CLGD between `p1` and `p2` over a reference set generated from one of them.
pub fn clgd_distance(p1: &PointCloud, p2: &PointCloud, refs: &ReferenceSet, params: &ClgdParams) -> Result<ClgdReport> {
    params.validate()?;
    let (selected, other) = match refs.selected_in(p1, p2)? {
        Selected::First => (p1, p2),
        Selected::Second => (p2, p1),
    };
    CalibratedField::new(selected, refs, params)?.report(other)
}

/// CLGD value and gradient with respect to the points of `moving`.
/// `refs` must have been generated from `fixed`.
pub fn clgd_gradient(
    fixed: &PointCloud,
    moving: &PointCloud,
    refs: &ReferenceSet,
    params: &ClgdParams,
) -> Result<(f64, Vec<Vec3>)> {
    CalibratedField::new(fixed, refs, params)?.gradient(moving)
}

/// Generates references from `p1` (appending `p2` if configured) and
/// evaluates the metric. With `params.symmetrize`, also evaluates the
/// direction seeded by `p2` and returns the mean of the two values.
pub fn symmetric_clgd(p1: &PointCloud, p2: &PointCloud, params: &ClgdParams) -> Result<ClgdReport> {
    let forward_refs = generate_references(p1, Some(p2), &params.reference)?;
    let forward = CalibratedField::new(p1, &forward_refs, params)?.report(p2)?;
    if !params.symmetrize {
        return Ok(forward);
    }
    let backward_refs = generate_references(p2, Some(p1), &params.reference)?;
    let backward = CalibratedField::new(p2, &backward_refs, params)?.report(p1)?;
    Ok(ClgdReport {
        value: 0.5 * (forward.value + backward.value),
        per_reference: None,
        scores: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cloud(rng: &mut impl Rng, n: usize) -> PointCloud {
        PointCloud::new((0..n).map(|_| Vec3::new(rng.random(), rng.random(), rng.random())).collect()).unwrap()
    }

    #[test]
    fn two_point_hand_computation() {
        let c = PointCloud::from_rows(&[[1.0, 0.0, 0.0], [3.0, 0.0, 0.0]]).unwrap();
        let idx = SpatialIndex::new(&c);
        let g = directional_distance(&Vec3::zeros(), &idx, 2, None).unwrap();
        assert!((g.f - 1.2).abs() < 1e-15);
        assert!((g.v - Vec3::new(-1.2, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn k1_collapses_to_nearest() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = random_cloud(&mut rng, 50);
        let idx = SpatialIndex::new(&c);
        let q = Vec3::new(0.3, 0.9, -0.2);
        let (i, d) = idx.nearest(&q);
        let g = directional_distance(&q, &idx, 1, None).unwrap();
        assert!((g.f - d).abs() < 1e-15);
        assert!((g.v - (q - c[i])).norm() < 1e-15);
    }

    #[test]
    fn probe_on_grid_point_is_near_zero() {
        let pts: Vec<Vec3> = (0..125).map(|i| Vec3::new((i % 5) as f64, ((i / 5) % 5) as f64, (i / 25) as f64)).collect();
        let c = PointCloud::new(pts).unwrap();
        let idx = SpatialIndex::new(&c);
        let g = directional_distance(&c[62], &idx, 5, None).unwrap();
        assert!(g.f < 1e-3 && g.v.norm() < 1e-3, "{g:?}");
    }

    #[test]
    fn supplied_own_weights_are_bit_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = random_cloud(&mut rng, 40);
        let idx = SpatialIndex::new(&c);
        for _ in 0..50 {
            let q = Vec3::new(rng.random(), rng.random(), rng.random());
            let w = calibration_weights(&q, &idx, 5, DEFAULT_EPSILON).unwrap();
            let a = directional_distance(&q, &idx, 5, None).unwrap();
            let b = directional_distance(&q, &idx, 5, Some(&w)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn weight_validation() {
        let c = PointCloud::from_rows(&[[0.0; 3], [1.0, 0.0, 0.0]]).unwrap();
        let idx = SpatialIndex::new(&c);
        assert!(directional_distance(&Vec3::zeros(), &idx, 2, Some(&[1.0])).is_err());
        assert!(directional_distance(&Vec3::zeros(), &idx, 2, Some(&[0.0, 0.0])).is_err());
        assert!(directional_distance(&Vec3::zeros(), &idx, 3, None).is_err());
    }

    #[test]
    fn identity_and_beta_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_cloud(&mut rng, 100);
        let b = random_cloud(&mut rng, 80);
        let params = ClgdParams::default();
        let refs = generate_references(&a, Some(&a), &params.reference).unwrap();
        assert_eq!(clgd_distance(&a, &a, &refs, &params).unwrap().value, 0.0);

        let refs = generate_references(&a, Some(&b), &params.reference).unwrap();
        let r = clgd_distance(&a, &b, &refs, &params).unwrap();
        let d = r.per_reference.as_ref().unwrap();
        assert!(r.scores.as_ref().unwrap().iter().all(|&s| s == 1.0));
        let mean = d.iter().sum::<f64>() / d.len() as f64;
        assert!((r.value - mean).abs() < 1e-15);
        assert!(r.value > 0.0);
        // Reversed argument order picks the same selected cloud.
        assert_eq!(clgd_distance(&b, &a, &refs, &params).unwrap().value, r.value);
    }

    #[test]
    fn reference_mismatch_and_k_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_cloud(&mut rng, 10);
        let b = random_cloud(&mut rng, 10);
        let c = random_cloud(&mut rng, 10);
        let params = ClgdParams::default();
        let refs = generate_references(&c, None, &params.reference).unwrap();
        assert!(matches!(clgd_distance(&a, &b, &refs, &params), Err(Error::ReferenceMismatch)));
        let small = random_cloud(&mut rng, 3);
        let refs = generate_references(&a, None, &params.reference).unwrap();
        assert!(matches!(clgd_distance(&a, &small, &refs, &params), Err(Error::InvalidK { .. })));
        assert!(clgd_gradient(&b, &a, &refs, &params).is_err());
    }

    #[test]
    fn symmetrized_averages_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_cloud(&mut rng, 60);
        let b = random_cloud(&mut rng, 60);
        let mut params = ClgdParams::default();
        let fwd = symmetric_clgd(&a, &b, &params).unwrap().value;
        let bwd = symmetric_clgd(&b, &a, &params).unwrap().value;
        params.symmetrize = true;
        let sym = symmetric_clgd(&a, &b, &params).unwrap().value;
        assert!((sym - 0.5 * (fwd + bwd)).abs() < 1e-15);
        assert_eq!(symmetric_clgd(&b, &a, &params).unwrap().value, sym);
    }

    #[test]
    fn gradient_at_identity_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = random_cloud(&mut rng, 64);
        let params = ClgdParams::default();
        let refs = generate_references(&a, Some(&a), &params.reference).unwrap();
        let (v, g) = clgd_gradient(&a, &a, &refs, &params).unwrap();
        assert_eq!(v, 0.0);
        // All ℓ1 components vanish, so only the zero subgradient remains.
        assert!(g.iter().all(|x| x.norm() == 0.0));
    }
}
