//! Chamfer, Hausdorff and exact EMD next to CLGD on the same pair.

use clgd::baselines::emd_exact;
use clgd::io::{synth_scene, SceneSpec, ShapeKind};
use clgd::prelude::*;

pub fn run_example() -> Result<()> {
    let mut spec = SceneSpec::new(ShapeKind::Sphere, 400, 3);
    spec.independent = true;
    spec.noise = 0.01;
    let scene = synth_scene(&spec)?;
    let (a, b) = (&scene.src, &scene.tgt);

    let cd = chamfer(a, b);
    println!("chamfer   {:.6}  (a->b {:.6}, b->a {:.6})", cd.value, cd.forward_mean, cd.backward_mean);
    println!("hausdorff {:.6}", hausdorff(a, b));
    let emd = emd_exact(a, b)?;
    println!("emd       {:.6}  (first pairs: {:?})", emd.value, &emd.assignment[..5]);
    let clgd = symmetric_clgd(a, b, &ClgdParams::default())?;
    println!("clgd      {:.6}", clgd.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
