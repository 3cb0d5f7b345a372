use super::directed_nearest;
use crate::pcore::{PointCloud, SpatialIndex};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChamferReport {
    pub value: f64,
    /// Mean nearest distance from `p1` into `p2`.
    pub forward_mean: f64,
    /// Mean nearest distance from `p2` into `p1`.
    pub backward_mean: f64,
}

pub fn chamfer(p1: &PointCloud, p2: &PointCloud) -> ChamferReport {
    let i1 = SpatialIndex::new(p1);
    let i2 = SpatialIndex::new(p2);
    let forward_mean = mean(directed_nearest(p1, &i2).iter().map(|x| x.1), p1.len());
    let backward_mean = mean(directed_nearest(p2, &i1).iter().map(|x| x.1), p2.len());
    ChamferReport {
        value: forward_mean + backward_mean,
        forward_mean,
        backward_mean,
    }
}

fn mean(it: impl Iterator<Item = f64>, n: usize) -> f64 {
    it.sum::<f64>() / n as f64
}

fn unit(v: Vec3) -> Vec3 {
    let n = v.norm();
    if n > 0.0 {
        v / n
    } else {
        Vec3::zeros()
    }
}

/// Chamfer value and its gradient with respect to `moving`, holding the
/// nearest-neighbor assignments fixed.
pub fn chamfer_gradient(fixed: &PointCloud, moving: &PointCloud) -> (f64, Vec<Vec3>) {
    let fixed_index = SpatialIndex::new(fixed);
    let moving_index = SpatialIndex::new(moving);
    let n1 = fixed.len() as f64;
    let n2 = moving.len() as f64;
    let mut grad = vec![Vec3::zeros(); moving.len()];

    let fwd = directed_nearest(fixed, &moving_index);
    let mut forward = 0.0;
    for (i, &(j, d)) in fwd.iter().enumerate() {
        forward += d;
        grad[j] += unit(moving[j] - fixed[i]) / n1;
    }
    let bwd = directed_nearest(moving, &fixed_index);
    let mut backward = 0.0;
    for (j, &(i, d)) in bwd.iter().enumerate() {
        backward += d;
        grad[j] += unit(moving[j] - fixed[i]) / n2;
    }
    (forward / n1 + backward / n2, grad)
}
