//! The directional distance `g(q, P) = [f ‖ v]` above a sampled plane.
//!
//! For a probe at height h over z = 0, `f` approaches h and `v` points
//! straight up with length h.

use clgd::metric::directional_distance;
use clgd::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let plane = PointCloud::new(
        (0..4000)
            .map(|_| Vec3::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0, 0.0))
            .collect(),
    )?;
    let index = SpatialIndex::new(&plane);
    for h in [0.02, 0.05, 0.1, 0.2] {
        let q = Vec3::new(0.1, -0.2, h);
        for k in [1, 5, 20] {
            let g = directional_distance(&q, &index, k, None)?;
            println!(
                "h = {h:<4} K = {k:<2}  f = {:.4}  v = ({:+.4}, {:+.4}, {:+.4})",
                g.f, g.v.x, g.v.y, g.v.z
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
