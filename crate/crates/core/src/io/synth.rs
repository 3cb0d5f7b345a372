//! Seeded synthetic scenes with known ground truth.
//!
//! A scene samples `n` source points on a shape, then builds the target as
//! `R·p + t + flow(object(p))`. Optionally a planar cut removes a fraction of
//! the target (partial overlap) and Gaussian noise perturbs it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::pcore::PointCloud;
use crate::solvers::se3::so3_exp;
use crate::{Error, Mat3, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    /// Unit sphere surface.
    Sphere,
    /// Square patch of the plane z = 0, side 2.
    Plane,
    /// Torus with major radius 1 and minor radius 0.35.
    Torus,
    /// A sphere (radius 0.5) and a torus (radii 0.4/0.15) side by side.
    TwoObjects,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub kind: ShapeKind,
    pub n: usize,
    pub seed: u64,
    /// Rotation angle in degrees about `axis`.
    pub rotation_deg: f64,
    /// Rotation axis; a seeded random axis when absent.
    pub axis: Option<[f64; 3]>,
    pub translation: [f64; 3],
    /// Per-object flow. One entry applies to every point; two-object scenes
    /// take one entry per object.
    pub flows: Vec<[f64; 3]>,
    /// Fraction of target points removed by a planar cut, in `[0, 1)`.
    pub crop: f64,
    /// Standard deviation of Gaussian noise added to the target.
    pub noise: f64,
    /// Sample the target surface independently instead of moving the source
    /// samples. Ground-truth flow still refers to the source points.
    #[serde(default)]
    pub independent: bool,
}

impl SceneSpec {
    pub fn new(kind: ShapeKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            seed,
            rotation_deg: 0.0,
            axis: None,
            translation: [0.0; 3],
            flows: Vec::new(),
            crop: 0.0,
            noise: 0.0,
            independent: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 8 {
            return Err(Error::param("n", "synthetic scenes need at least 8 points"));
        }
        if !(0.0..1.0).contains(&self.crop) {
            return Err(Error::param("crop", "must lie in [0, 1)"));
        }
        if !(self.noise >= 0.0) || !self.noise.is_finite() {
            return Err(Error::param("noise", "must be finite and non-negative"));
        }
        if !self.rotation_deg.is_finite() || self.translation.iter().any(|c| !c.is_finite()) {
            return Err(Error::param("transform", "must be finite"));
        }
        if let Some(a) = self.axis {
            if !(Vec3::from(a).norm() > 0.0) {
                return Err(Error::param("axis", "must be a non-zero vector"));
            }
        }
        let objects = if self.kind == ShapeKind::TwoObjects { 2 } else { 1 };
        if !(self.flows.is_empty() || self.flows.len() == 1 || self.flows.len() == objects) {
            return Err(Error::param("flow", format!("expected 1 or {objects} flow vectors")));
        }
        Ok(())
    }

    /// Number of target points kept after the crop: `⌈(1 − crop)·n⌉`.
    pub fn kept_count(&self) -> usize {
        // Guard against products like 0.7·1000 = 700.0000000000001.
        (((1.0 - self.crop) * self.n as f64) - 1e-9).ceil().max(1.0) as usize
    }
}

/// A rigid-registration scene with a seeded random rotation of at most
/// `max_rotation_deg` degrees and a translation of norm at most
/// `max_translation`, cropped by `crop`.
pub fn random_rigid_spec(
    kind: ShapeKind,
    n: usize,
    seed: u64,
    max_rotation_deg: f64,
    max_translation: f64,
    crop: f64,
) -> SceneSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let rotation_deg = rng.random::<f64>() * max_rotation_deg;
    let axis = unit_sphere(&mut rng);
    let translation = unit_sphere(&mut rng) * (rng.random::<f64>() * max_translation);
    SceneSpec {
        rotation_deg,
        axis: Some(axis.into()),
        translation: translation.into(),
        crop,
        ..SceneSpec::new(kind, n, seed)
    }
}

/// Ground truth of a synthetic scene.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// Row-major 3×3 rotation.
    pub rotation: [f64; 9],
    pub translation: [f64; 3],
    /// Target position minus source position for every source point
    /// (before cropping and noise).
    pub flow: Vec<[f64; 3]>,
    /// Object id of every source point.
    pub object: Vec<usize>,
    /// Indices of the moved samples that survive the crop, in target order.
    /// These are source indices unless the target was sampled independently.
    pub kept: Vec<usize>,
    pub spec: SceneSpec,
}

impl GroundTruth {
    pub fn rotation_matrix(&self) -> Mat3 {
        Mat3::from_row_slice(&self.rotation)
    }

    pub fn translation_vector(&self) -> Vec3 {
        Vec3::from(self.translation)
    }

    pub fn flow_vectors(&self) -> Vec<Vec3> {
        self.flow.iter().map(|f| Vec3::from(*f)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub src: PointCloud,
    pub tgt: PointCloud,
    pub truth: GroundTruth,
}

fn gaussian3(rng: &mut ChaCha8Rng) -> Vec3 {
    Vec3::new(
        StandardNormal.sample(rng),
        StandardNormal.sample(rng),
        StandardNormal.sample(rng),
    )
}

fn unit_sphere(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = gaussian3(rng);
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

/// Area-uniform torus sample via rejection on the tube angle.
fn torus(rng: &mut ChaCha8Rng, major: f64, minor: f64) -> Vec3 {
    loop {
        let u: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        let v: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        let w: f64 = rng.random();
        if w <= (major + minor * v.cos()) / (major + minor) {
            let ring = major + minor * v.cos();
            return Vec3::new(ring * u.cos(), ring * u.sin(), minor * v.sin());
        }
    }
}

fn sample_shape(kind: ShapeKind, n: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec3>, Vec<usize>) {
    match kind {
        ShapeKind::Sphere => ((0..n).map(|_| unit_sphere(rng)).collect(), vec![0; n]),
        ShapeKind::Plane => (
            (0..n)
                .map(|_| Vec3::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0, 0.0))
                .collect(),
            vec![0; n],
        ),
        ShapeKind::Torus => ((0..n).map(|_| torus(rng, 1.0, 0.35)).collect(), vec![0; n]),
        ShapeKind::TwoObjects => {
            let first = n.div_ceil(2);
            let mut pts = Vec::with_capacity(n);
            let mut obj = Vec::with_capacity(n);
            for i in 0..n {
                if i < first {
                    pts.push(unit_sphere(rng) * 0.5 + Vec3::new(-0.8, 0.0, 0.0));
                    obj.push(0);
                } else {
                    pts.push(torus(rng, 0.4, 0.15) + Vec3::new(0.8, 0.0, 0.0));
                    obj.push(1);
                }
            }
            (pts, obj)
        }
    }
}

/// Builds a deterministic scene from `spec`.
pub fn synth_scene(spec: &SceneSpec) -> Result<Scene> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (src_pts, object) = sample_shape(spec.kind, spec.n, &mut rng);

    let axis = match spec.axis {
        Some(a) => Vec3::from(a).normalize(),
        None => unit_sphere(&mut rng),
    };
    let rotation = so3_exp(&(axis * spec.rotation_deg.to_radians()));
    let translation = Vec3::from(spec.translation);
    let flows: Vec<Vec3> = spec.flows.iter().map(|f| Vec3::from(*f)).collect();
    let object_flow = |o: usize| match flows.len() {
        0 => Vec3::zeros(),
        1 => flows[0],
        _ => flows[o],
    };
    let motion = |(p, &o): (&Vec3, &usize)| rotation * p + translation + object_flow(o);
    let moved: Vec<Vec3> = src_pts.iter().zip(&object).map(motion).collect();
    let flow: Vec<[f64; 3]> = moved.iter().zip(&src_pts).map(|(m, p)| (m - p).into()).collect();
    let moved = if spec.independent {
        let (pts, obj) = sample_shape(spec.kind, spec.n, &mut rng);
        pts.iter().zip(&obj).map(motion).collect()
    } else {
        moved
    };

    let cut = unit_sphere(&mut rng);
    let mut kept: Vec<usize> = (0..spec.n).collect();
    if spec.crop > 0.0 {
        let keep = spec.kept_count();
        kept.sort_by(|&a, &b| moved[a].dot(&cut).total_cmp(&moved[b].dot(&cut)).then(a.cmp(&b)));
        kept.truncate(keep);
        kept.sort_unstable();
    }
    let tgt_pts: Vec<Vec3> = kept
        .iter()
        .map(|&i| {
            if spec.noise > 0.0 {
                moved[i] + gaussian3(&mut rng) * spec.noise
            } else {
                moved[i]
            }
        })
        .collect();

    let mut rot = [0.0; 9];
    for r in 0..3 {
        for c in 0..3 {
            rot[3 * r + c] = rotation[(r, c)];
        }
    }
    Ok(Scene {
        src: PointCloud::new(src_pts)?,
        tgt: PointCloud::new(tgt_pts)?,
        truth: GroundTruth {
            rotation: rot,
            translation: spec.translation,
            flow,
            object,
            kept,
            spec: spec.clone(),
        },
    })
}
