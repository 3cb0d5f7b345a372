use rayon::prelude::*;

use crate::pcore::PointCloud;
use crate::{Error, Result, Vec3};

/// Largest cloud size accepted by [`emd_exact`]. The assignment solver is
/// cubic in the point count.
pub const DEFAULT_EMD_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct EmdReport {
    /// Mean matched distance.
    pub value: f64,
    /// `assignment[i]` is the point of `p2` matched to point `i` of `p1`.
    pub assignment: Vec<usize>,
}

/// Minimum-cost perfect assignment on a square cost matrix given row-major.
///
/// Shortest augmenting paths with row/column potentials, O(n³). Returns the
/// column assigned to every row.
pub fn hungarian(cost: &[f64], n: usize) -> Vec<usize> {
    assert_eq!(cost.len(), n * n, "cost matrix must be n×n");
    if n == 0 {
        return Vec::new();
    }
    // 1-based bookkeeping; slot 0 is the virtual root row/column.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![0.0; n + 1];
    let mut used = vec![false; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        minv.iter_mut().for_each(|x| *x = f64::INFINITY);
        used.iter_mut().for_each(|x| *x = false);
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            let row = &cost[(i0 - 1) * n..i0 * n];
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = row[j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    assignment
}

pub fn emd_exact(p1: &PointCloud, p2: &PointCloud) -> Result<EmdReport> {
    emd_exact_capped(p1, p2, DEFAULT_EMD_CAP)
}

pub fn emd_exact_capped(p1: &PointCloud, p2: &PointCloud, cap: usize) -> Result<EmdReport> {
    if p1.len() != p2.len() {
        return Err(Error::SizeMismatch {
            left: p1.len(),
            right: p2.len(),
        });
    }
    let n = p1.len();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let cost: Vec<f64> = p1
        .points()
        .par_iter()
        .flat_map_iter(|a| p2.iter().map(move |b| (a - b).norm()))
        .collect();
    let assignment = hungarian(&cost, n);
    let value = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i * n + j])
        .sum::<f64>()
        / n as f64;
    Ok(EmdReport { value, assignment })
}

/// EMD value and gradient with respect to `moving`, holding the optimal
/// assignment fixed.
pub fn emd_gradient(fixed: &PointCloud, moving: &PointCloud) -> Result<(f64, Vec<Vec3>)> {
    let report = emd_exact(fixed, moving)?;
    let n = fixed.len() as f64;
    let mut grad = vec![Vec3::zeros(); moving.len()];
    for (i, &j) in report.assignment.iter().enumerate() {
        let diff = moving[j] - fixed[i];
        let d = diff.norm();
        if d > 0.0 {
            grad[j] = diff / (d * n);
        }
    }
    Ok((report.value, grad))
}
