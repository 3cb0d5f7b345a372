//! Point-cloud files, synthetic scenes and the JSON result schema.

mod ply;
pub mod results;
pub mod synth;
mod xyz;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::pcore::PointCloud;
use crate::{Error, Result};

pub use synth::{random_rigid_spec, synth_scene, GroundTruth, Scene, SceneSpec, ShapeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CloudFormat {
    /// One `x y z` triple per line.
    Xyz,
    /// ASCII PLY with a `vertex` element.
    PlyAscii,
}

impl CloudFormat {
    /// `.ply` is PLY; `.xyz`, `.txt` and `.pts` are XYZ text.
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase());
        match ext.as_deref() {
            Some("ply") => Ok(CloudFormat::PlyAscii),
            Some("xyz") | Some("txt") | Some("pts") => Ok(CloudFormat::Xyz),
            _ => Err(Error::Format {
                path: path.to_path_buf(),
                message: "cannot infer format from extension; use .xyz or .ply or pass a format".into(),
            }),
        }
    }
}

/// Loads a cloud, inferring the format from the extension unless `format` is given.
pub fn load_cloud(path: impl AsRef<Path>, format: Option<CloudFormat>) -> Result<PointCloud> {
    let path = path.as_ref();
    let format = match format {
        Some(f) => f,
        None => CloudFormat::from_path(path)?,
    };
    let text = std::fs::read_to_string(path)?;
    let points = match format {
        CloudFormat::Xyz => xyz::parse(&text, path)?,
        CloudFormat::PlyAscii => ply::parse(&text, path)?,
    };
    if points.is_empty() {
        return Err(Error::Format {
            path: path.to_path_buf(),
            message: "file contains no points".into(),
        });
    }
    PointCloud::new(points)
}

/// Writes a cloud. Coordinates use the shortest decimal form that parses
/// back to the identical `f64`, so `load_cloud(save_cloud(c)) == c`.
pub fn save_cloud(cloud: &PointCloud, path: impl AsRef<Path>, format: Option<CloudFormat>) -> Result<()> {
    let path = path.as_ref();
    let format = match format {
        Some(f) => f,
        None => CloudFormat::from_path(path)?,
    };
    let text = match format {
        CloudFormat::Xyz => xyz::render(cloud),
        CloudFormat::PlyAscii => ply::render(cloud),
    };
    std::fs::write(path, text)?;
    Ok(())
}
