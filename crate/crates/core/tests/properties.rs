mod common;

use clgd::eval::is_rotation;
use clgd::prelude::*;
use clgd::solvers::{se3_exp, se3_log, smoothness};
use common::brute_knn;
use proptest::prelude::*;

fn points(min: usize, max: usize) -> impl Strategy<Value = Vec<Vec3>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), min..=max)
        .prop_map(|v| v.into_iter().map(|(x, y, z)| Vec3::new(x, y, z)).collect())
}

/// Coordinates on a coarse grid so exact distance ties are common.
fn grid_points(min: usize, max: usize) -> impl Strategy<Value = Vec<Vec3>> {
    prop::collection::vec((0..4i32, 0..4i32, 0..4i32), min..=max)
        .prop_map(|v| v.into_iter().map(|(x, y, z)| Vec3::new(x as f64, y as f64, z as f64)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn knn_matches_brute_force_with_ties(cloud in grid_points(1, 80), q in grid_points(1, 1), k in 1usize..10) {
        let k = k.min(cloud.len());
        let index = SpatialIndex::new(&PointCloud::new(cloud.clone()).unwrap());
        let got = index.knn(&q[0], k).unwrap();
        let want = brute_knn(&cloud, &q[0], k);
        prop_assert_eq!(got.indices, want.iter().map(|x| x.1).collect::<Vec<_>>());
        for (d, (d2, _)) in got.distances.iter().zip(&want) {
            prop_assert!((d - d2.sqrt()).abs() <= 1e-12);
        }
    }

    #[test]
    fn clgd_is_zero_on_identical_clouds(cloud in points(6, 60), k in 1usize..6, beta in 0.0..5.0f64, seed: u64) {
        let cloud = PointCloud::new(cloud).unwrap();
        let params = ClgdParams { k, beta, reference: ReferenceParams { seed, ..Default::default() }, ..Default::default() };
        let refs = generate_references(&cloud, Some(&cloud), &params.reference).unwrap();
        prop_assert_eq!(clgd_distance(&cloud, &cloud, &refs, &params).unwrap().value, 0.0);
    }

    #[test]
    fn distances_are_nonnegative(a in points(6, 50), b in points(6, 50), beta in 0.0..5.0f64, seed: u64) {
        let (a, b) = (PointCloud::new(a).unwrap(), PointCloud::new(b).unwrap());
        let params = ClgdParams { beta, reference: ReferenceParams { seed, ..Default::default() }, ..Default::default() };
        let refs = generate_references(&a, Some(&b), &params.reference).unwrap();
        let report = clgd_distance(&a, &b, &refs, &params).unwrap();
        prop_assert!(report.value >= 0.0);
        prop_assert!(chamfer(&a, &b).value >= 0.0);
        prop_assert!(hausdorff(&a, &b) >= 0.0);
    }

    #[test]
    fn se3_exp_is_a_rigid_motion(w in points(1, 1), t in points(1, 1), scale in 0.0..1.8f64) {
        // |ω| stays below π, where log inverts exp.
        let w = w[0] * scale;
        let xi = [w.x, w.y, w.z, t[0].x, t[0].y, t[0].z];
        let (r, tr) = se3_exp(&xi);
        prop_assert!(is_rotation(&r, 1e-12));
        let back = se3_log(&r, &tr);
        for (a, b) in back.iter().zip(&xi) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn smoothness_is_nonnegative(src in points(2, 60), flow in points(60, 60), ks in 1usize..10) {
        let n = src.len();
        let value = smoothness(&flow[..n], &PointCloud::new(src).unwrap(), ks.min(n - 1)).unwrap();
        prop_assert!(value >= 0.0);
    }

    #[test]
    fn accuracy_thresholds_are_nested(pred in points(1, 40), gt in points(40, 40)) {
        let e = flow_error(&pred, &gt[..pred.len()]).unwrap();
        prop_assert!(e.acc_005 <= e.acc_01);
        prop_assert!(e.epe3d >= 0.0);
        prop_assert!((0.0..=1.0).contains(&e.outliers));
    }
}
