//! Task metrics for registration and scene flow.

use serde::{Deserialize, Serialize};

use crate::{Error, Mat3, Result, Vec3};

/// Threshold convention used by [`flow_error`], printed alongside reports.
pub const FLOW_THRESHOLDS: &str = "acc_005: e<0.05 or e/|gt|<0.05; acc_01: e<0.1 or e/|gt|<0.1; \
outliers: e>0.3 or e/|gt|>0.1; relative tests skipped where |gt|=0";

const ORTHONORMAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegistrationError {
    /// Angle of `R_gtᵀ·R̂` in degrees.
    pub re_degrees: f64,
    /// `‖t̂ − t_gt‖`.
    pub te: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowError {
    pub epe3d: f64,
    pub acc_005: f64,
    pub acc_01: f64,
    pub outliers: f64,
}

pub fn is_rotation(r: &Mat3, tol: f64) -> bool {
    (r.transpose() * r - Mat3::identity()).amax() <= tol && (r.determinant() - 1.0).abs() <= tol
}

/// Angle of a rotation in radians, `arccos((tr R − 1)/2)`, evaluated through
/// `atan2` so angles near 0 and π keep full precision.
pub fn rotation_angle(r: &Mat3) -> f64 {
    let cos = ((r.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    let sin = 0.5
        * Vec3::new(r[(2, 1)] - r[(1, 2)], r[(0, 2)] - r[(2, 0)], r[(1, 0)] - r[(0, 1)]).norm();
    sin.atan2(cos)
}

pub fn registration_error(r_est: &Mat3, t_est: &Vec3, r_gt: &Mat3, t_gt: &Vec3) -> Result<RegistrationError> {
    if !is_rotation(r_est, ORTHONORMAL_TOL) || !is_rotation(r_gt, ORTHONORMAL_TOL) {
        return Err(Error::NotRotation);
    }
    Ok(RegistrationError {
        re_degrees: rotation_angle(&(r_gt.transpose() * r_est)).to_degrees(),
        te: (t_est - t_gt).norm(),
    })
}

pub fn flow_error(pred: &[Vec3], gt: &[Vec3]) -> Result<FlowError> {
    if pred.len() != gt.len() {
        return Err(Error::SizeMismatch {
            left: pred.len(),
            right: gt.len(),
        });
    }
    if pred.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let mut epe = 0.0;
    let (mut a5, mut a10, mut out) = (0usize, 0usize, 0usize);
    for (p, g) in pred.iter().zip(gt) {
        let e = (p - g).norm();
        let mag = g.norm();
        let rel = if mag > 0.0 { Some(e / mag) } else { None };
        epe += e;
        if e < 0.05 || rel.is_some_and(|r| r < 0.05) {
            a5 += 1;
        }
        if e < 0.1 || rel.is_some_and(|r| r < 0.1) {
            a10 += 1;
        }
        if e > 0.3 || rel.is_some_and(|r| r > 0.1) {
            out += 1;
        }
    }
    let n = pred.len() as f64;
    Ok(FlowError {
        epe3d: epe / n,
        acc_005: a5 as f64 / n,
        acc_01: a10 as f64 / n,
        outliers: out as f64 / n,
    })
}
