//! Generate a scene, write it as XYZ and PLY, and read it back.

use clgd::io::{load_cloud, save_cloud, synth_scene, CloudFormat, SceneSpec, ShapeKind};
use clgd::prelude::*;

pub fn run_example() -> Result<()> {
    let mut spec = SceneSpec::new(ShapeKind::Torus, 1024, 11);
    spec.rotation_deg = 30.0;
    spec.translation = [0.1, 0.0, -0.2];
    spec.crop = 0.4;
    let scene = synth_scene(&spec)?;
    println!("src {} points, tgt {} points after the crop", scene.src.len(), scene.tgt.len());

    let dir = std::env::temp_dir().join(format!("clgd-synth-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let xyz = dir.join("tgt.xyz");
    let ply = dir.join("tgt.ply");
    save_cloud(&scene.tgt, &xyz, None)?;
    save_cloud(&scene.tgt, &ply, Some(CloudFormat::PlyAscii))?;
    let from_xyz = load_cloud(&xyz, None)?;
    let from_ply = load_cloud(&ply, None)?;
    println!("xyz round trip exact: {}", from_xyz == scene.tgt);
    println!("ply round trip exact: {}", from_ply == scene.tgt);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
