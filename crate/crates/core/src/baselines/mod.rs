//! Baseline metrics: Chamfer, Hausdorff and exact Earth Mover's distance.
//!
//! All three use unsquared Euclidean distances. Chamfer is the sum of the two
//! directional mean nearest distances; EMD is the mean matched distance under
//! the optimal bijection.

mod chamfer;
mod emd;

pub use chamfer::{chamfer, chamfer_gradient, ChamferReport};
pub use emd::{emd_exact, emd_exact_capped, emd_gradient, hungarian, EmdReport, DEFAULT_EMD_CAP};

use rayon::prelude::*;

use crate::pcore::{PointCloud, SpatialIndex};

/// Nearest distance from every point of `from` into `to`.
pub(crate) fn directed_nearest(from: &PointCloud, to: &SpatialIndex) -> Vec<(usize, f64)> {
    from.points().par_iter().map(|p| to.nearest(p)).collect()
}

/// Hausdorff distance: the larger of the two directed maxima of nearest
/// distances.
pub fn hausdorff(p1: &PointCloud, p2: &PointCloud) -> f64 {
    let i1 = SpatialIndex::new(p1);
    let i2 = SpatialIndex::new(p2);
    let fwd = directed_nearest(p1, &i2).into_iter().map(|(_, d)| d).fold(0.0, f64::max);
    let bwd = directed_nearest(p2, &i1).into_iter().map(|(_, d)| d).fold(0.0, f64::max);
    fwd.max(bwd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Vec3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hausdorff_cases() {
        let a = PointCloud::from_rows(&[[0.0; 3], [5.0, 0.0, 0.0]]).unwrap();
        let b = PointCloud::from_rows(&[[0.0; 3]]).unwrap();
        assert_eq!(hausdorff(&a, &b), 5.0);
        assert_eq!(hausdorff(&b, &a), 5.0);
        assert_eq!(hausdorff(&a, &a), 0.0);
    }

    #[test]
    fn hausdorff_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5 {
            let a: Vec<Vec3> = (0..200).map(|_| Vec3::new(rng.random(), rng.random(), rng.random())).collect();
            let b: Vec<Vec3> = (0..150).map(|_| Vec3::new(rng.random(), rng.random(), rng.random())).collect();
            let directed = |x: &[Vec3], y: &[Vec3]| {
                x.iter()
                    .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
                    .fold(0.0, f64::max)
            };
            let expect = directed(&a, &b).max(directed(&b, &a));
            let got = hausdorff(&PointCloud::new(a).unwrap(), &PointCloud::new(b).unwrap());
            assert_eq!(got, expect);
        }
    }
}
