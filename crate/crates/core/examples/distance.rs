//! CLGD between a torus and a slightly bent copy of it, with per-reference detail.
//!
//! ```bash
//! cargo run --release --example distance
//! ```

use clgd::io::{synth_scene, SceneSpec, ShapeKind};
use clgd::prelude::*;

pub fn run_example() -> Result<()> {
    let scene = synth_scene(&SceneSpec::new(ShapeKind::Torus, 1500, 7))?;
    let a = scene.src;
    // Lift one side of the torus.
    let b = PointCloud::new(a.iter().map(|p| p + Vec3::new(0.0, 0.0, 0.05 * p.x.max(0.0))).collect())?;

    let params = ClgdParams::default();
    let refs = generate_references(&a, Some(&b), &params.reference)?;
    println!("{} references ({} noisy copies + {} appended)", refs.len(), refs.noisy_len(), b.len());

    let same = clgd_distance(&a, &a, &generate_references(&a, Some(&a), &params.reference)?, &params)?;
    println!("CLGD(a, a) = {}", same.value);

    for beta in [0.0, 3.0, 10.0] {
        let report = clgd_distance(&a, &b, &refs, &ClgdParams { beta, ..params })?;
        println!("CLGD(a, b), beta = {beta:>4}: {:.6}", report.value);
    }

    let report = clgd_distance(&a, &b, &refs, &params)?;
    let d = report.per_reference.unwrap_or_default();
    let worst = d.iter().copied().enumerate().max_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
    let q = refs.points()[worst.0];
    println!("largest discrepancy {:.4} at reference ({:.3}, {:.3}, {:.3})", worst.1, q.x, q.y, q.z);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
