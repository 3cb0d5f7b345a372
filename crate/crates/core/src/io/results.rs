//! JSON documents written by the solvers and read back by `clgd eval`.
//!
//! Every document carries the run configuration verbatim. Wall-clock values
//! live only under the `timing` key so outputs can be compared byte for byte
//! once that key is dropped.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::eval::{FlowError, RegistrationError};
use crate::solvers::{RigidTransform, SolveTrace};
use crate::{Mat3, Result, Vec3};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformDoc {
    /// Row-major rotation.
    pub rotation: [f64; 9],
    pub translation: [f64; 3],
    /// Tangent coordinates `[ω; τ]`.
    pub xi: [f64; 6],
}

impl TransformDoc {
    pub fn from_transform(tf: &RigidTransform) -> Self {
        let (r, t) = tf.rt();
        let mut rotation = [0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                rotation[3 * i + j] = r[(i, j)];
            }
        }
        Self {
            rotation,
            translation: t.into(),
            xi: tf.xi,
        }
    }

    pub fn rotation_matrix(&self) -> Mat3 {
        Mat3::from_row_slice(&self.rotation)
    }

    pub fn translation_vector(&self) -> Vec3 {
        Vec3::from(self.translation)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub objective: Vec<f64>,
    pub best_iteration: usize,
    pub best_objective: f64,
    pub solver: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_clock_s: f64,
}

impl TraceDoc {
    pub fn split(trace: SolveTrace) -> (Self, Timing) {
        (
            Self {
                objective: trace.objective,
                best_iteration: trace.best_iteration,
                best_objective: trace.best_objective,
                solver: trace.config,
            },
            Timing {
                wall_clock_s: trace.wall_clock_s,
            },
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistrationDoc {
    pub command: String,
    pub config: serde_json::Value,
    pub transform: TransformDoc,
    pub trace: TraceDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eval: Option<RegistrationError>,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowDoc {
    pub command: String,
    pub config: serde_json::Value,
    pub flow: Vec<[f64; 3]>,
    pub trace: TraceDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eval: Option<FlowError>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub thresholds: Option<String>,
    pub timing: Timing,
}

/// Either solver document, as read by `clgd eval`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Prediction {
    Registration(RegistrationDoc),
    Flow(FlowDoc),
}

pub fn write_json<T: Serialize>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
