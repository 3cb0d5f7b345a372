//! SE(3) exponential/logarithm and the left Jacobian used to pull point
//! gradients back onto the 6-vector parameterization.
//!
//! Tangent vectors are ordered `[ω; τ]`: three rotational components
//! followed by three translational ones.

use serde::{Deserialize, Serialize};

use crate::{Mat3, Vec3};

const SMALL_ANGLE: f64 = 1e-6;

pub fn hat(w: &Vec3) -> Mat3 {
    Mat3::new(0.0, -w.z, w.y, w.z, 0.0, -w.x, -w.y, w.x, 0.0)
}

fn vee(m: &Mat3) -> Vec3 {
    Vec3::new(m[(2, 1)], m[(0, 2)], m[(1, 0)])
}

/// `(θ−sinθ)/θ³`, with a series below 0.1 where the closed form cancels.
fn third_order(theta: f64) -> f64 {
    if theta < 0.1 {
        let t2 = theta * theta;
        1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0 - t2 * t2 * t2 / 362_880.0
    } else {
        (theta - theta.sin()) / (theta * theta * theta)
    }
}

/// Rodrigues coefficients `(sinθ/θ, (1−cosθ)/θ², (θ−sinθ)/θ³)`.
fn coefficients(theta: f64) -> (f64, f64, f64) {
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        (1.0 - t2 / 6.0, 0.5 - t2 / 24.0, third_order(theta))
    } else {
        let half = (0.5 * theta).sin();
        (theta.sin() / theta, 2.0 * half * half / (theta * theta), third_order(theta))
    }
}

/// Rotation exponential.
pub fn so3_exp(w: &Vec3) -> Mat3 {
    let (a, b, _) = coefficients(w.norm());
    let k = hat(w);
    Mat3::identity() + k * a + k * k * b
}

/// Left Jacobian of SO(3); also the `V` matrix mapping `τ` to the translation.
pub fn so3_left_jacobian(w: &Vec3) -> Mat3 {
    let (_, b, c) = coefficients(w.norm());
    let k = hat(w);
    Mat3::identity() + k * b + k * k * c
}

/// `(R, t)` for a tangent vector `xi = [ω; τ]`.
pub fn se3_exp(xi: &[f64; 6]) -> (Mat3, Vec3) {
    let w = Vec3::new(xi[0], xi[1], xi[2]);
    let tau = Vec3::new(xi[3], xi[4], xi[5]);
    (so3_exp(&w), so3_left_jacobian(&w) * tau)
}

/// Rotation logarithm, returning `ω` with `‖ω‖ ∈ [0, π]`.
pub fn so3_log(r: &Mat3) -> Vec3 {
    let skew = vee(&(r - r.transpose())) * 0.5;
    let sin_theta = skew.norm();
    let cos_theta = ((r.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
    let theta = sin_theta.atan2(cos_theta);
    if theta < SMALL_ANGLE {
        return skew * (1.0 + theta * theta / 6.0);
    }
    if cos_theta > -0.9 {
        return skew * (theta / sin_theta);
    }
    // Near π the antisymmetric part vanishes; recover the axis from the
    // symmetric part ωωᵀ = (R_sym − I)/B + θ² I.
    let b = (1.0 - cos_theta) / (theta * theta);
    let sym = (r + r.transpose()) * 0.5;
    let outer = (sym - Mat3::identity()) / b + Mat3::identity() * (theta * theta);
    let col = (0..3)
        .max_by(|&i, &j| outer[(i, i)].total_cmp(&outer[(j, j)]))
        .unwrap();
    let mut w = outer.column(col) / outer[(col, col)].max(0.0).sqrt();
    if w.dot(&skew) < 0.0 {
        w = -w;
    }
    w.normalize() * theta
}

pub fn se3_log(r: &Mat3, t: &Vec3) -> [f64; 6] {
    let w = so3_log(r);
    let tau = so3_left_jacobian(&w)
        .try_inverse()
        .expect("V is invertible for |ω| < 2π")
        * t;
    [w.x, w.y, w.z, tau.x, tau.y, tau.z]
}

/// Coupling block `Q(τ, ω)` of the SE(3) left Jacobian.
fn q_block(w: &Vec3, tau: &Vec3) -> Mat3 {
    let theta = w.norm();
    let (c1, c2, c3) = if theta < 0.1 {
        let t2 = theta * theta;
        let t4 = t2 * t2;
        (
            third_order(theta),
            1.0 / 24.0 - t2 / 720.0 + t4 / 40_320.0 - t4 * t2 / 3_628_800.0,
            1.0 / 120.0 - t2 / 2520.0 + t4 / 120_960.0 - t4 * t2 / 9_979_200.0,
        )
    } else {
        let (s, c) = theta.sin_cos();
        let half = (0.5 * theta).sin();
        let t2 = theta * theta;
        (
            third_order(theta),
            (t2 - 4.0 * half * half) / (2.0 * t2 * t2),
            (2.0 * theta - 3.0 * s + theta * c) / (2.0 * t2 * t2 * theta),
        )
    };
    let p = hat(w);
    let r = hat(tau);
    let prp = p * r * p;
    r * 0.5 + (p * r + r * p + prp) * c1 + (p * p * r + r * p * p - prp * 3.0) * c2 + (prp * p + p * prp) * c3
}

/// Pulls the gradient of a scalar with respect to transformed points
/// `y_i = R(xi)·p_i + t(xi)` back to a gradient with respect to `xi`.
///
/// `points` are the already-transformed `y_i`. Uses
/// `exp(xi + δ) ≈ exp(𝒥(xi)·δ)·exp(xi)` with the SE(3) left Jacobian `𝒥`.
pub fn pullback_gradient(xi: &[f64; 6], points: &[Vec3], grads: &[Vec3]) -> [f64; 6] {
    let mut g_rot = Vec3::zeros();
    let mut g_trans = Vec3::zeros();
    for (y, g) in points.iter().zip(grads) {
        g_rot += y.cross(g);
        g_trans += g;
    }
    let w = Vec3::new(xi[0], xi[1], xi[2]);
    let tau = Vec3::new(xi[3], xi[4], xi[5]);
    let jt = so3_left_jacobian(&w).transpose();
    let q = q_block(&w, &tau);
    let d_w = jt * g_rot + q.transpose() * g_trans;
    let d_tau = jt * g_trans;
    [d_w.x, d_w.y, d_w.z, d_tau.x, d_tau.y, d_tau.z]
}

/// A rigid transform stored by its tangent coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform {
    pub xi: [f64; 6],
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self { xi: [0.0; 6] }
    }

    pub fn from_xi(xi: [f64; 6]) -> Self {
        Self { xi }
    }

    pub fn from_rt(rotation: &Mat3, translation: &Vec3) -> Self {
        Self {
            xi: se3_log(rotation, translation),
        }
    }

    pub fn rotation(&self) -> Mat3 {
        se3_exp(&self.xi).0
    }

    pub fn translation(&self) -> Vec3 {
        se3_exp(&self.xi).1
    }

    pub fn rt(&self) -> (Mat3, Vec3) {
        se3_exp(&self.xi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_is_identity() {
        let (r, t) = se3_exp(&[0.0; 6]);
        assert_eq!(r, Mat3::identity());
        assert_eq!(t, Vec3::zeros());
    }

    #[test]
    fn quarter_turn_about_z() {
        let (r, _) = se3_exp(&[0.0, 0.0, FRAC_PI_2, 0.0, 0.0, 0.0]);
        assert!((r * Vec3::x() - Vec3::y()).norm() < 1e-15);
    }

    #[test]
    fn log_near_pi() {
        let axis = Vec3::new(0.3, -0.5, 0.8).normalize();
        for theta in [std::f64::consts::PI - 1e-3, std::f64::consts::PI - 1e-7, 2.9] {
            let w = axis * theta;
            let back = so3_log(&so3_exp(&w));
            assert!((back - w).norm() < 1e-8, "{theta}: {back:?}");
        }
    }

    #[test]
    fn log_tiny_angles() {
        for s in [0.0, 1e-12, 1e-8, 1e-6, 1e-4] {
            let w = Vec3::new(0.2, 0.4, -0.1) * s;
            assert!((so3_log(&so3_exp(&w)) - w).norm() < 1e-15 + 1e-10 * s);
        }
    }

    // Finite-difference oracle for the pullback through the exponential map.
    #[test]
    fn pullback_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..200 {
            let scale = [1e-4, 1e-2, 0.5, 2.0][trial % 4];
            let xi: [f64; 6] = std::array::from_fn(|i| (rng.random::<f64>() - 0.5) * if i < 3 { scale } else { 1.0 });
            let pts: Vec<Vec3> = (0..5).map(|_| Vec3::new(rng.random(), rng.random(), rng.random())).collect();
            let c: Vec<Vec3> = (0..5).map(|_| Vec3::new(rng.random(), rng.random(), rng.random())).collect();
            // Linear functional of the transformed points.
            let f = |x: &[f64; 6]| {
                let (r, t) = se3_exp(x);
                pts.iter().zip(&c).map(|(p, c)| (r * p + t).dot(c)).sum::<f64>()
            };
            let (r, t) = se3_exp(&xi);
            let ys: Vec<Vec3> = pts.iter().map(|p| r * p + t).collect();
            let g = pullback_gradient(&xi, &ys, &c);
            let h = 1e-6;
            for i in 0..6 {
                let mut a = xi;
                let mut b = xi;
                a[i] += h;
                b[i] -= h;
                let fd = (f(&a) - f(&b)) / (2.0 * h);
                assert!((fd - g[i]).abs() < 1e-7 * (1.0 + fd.abs()), "trial {trial} comp {i}: {fd} vs {}", g[i]);
            }
        }
    }
}
