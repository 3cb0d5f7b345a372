//! Calibrated local geometry distance (CLGD) between unstructured 3D point clouds.
//!
//! The crate is organized bottom-up:
//!
//! - [`pcore`]: point clouds and an exact kd-tree for nearest-neighbor queries.
//! - [`reference`]: reference-point generation that probes the surfaces near both clouds.
//! - [`metric`]: directional distances, the CLGD metric and its analytic gradient.
//! - [`baselines`]: Chamfer, Hausdorff and exact Earth Mover's distances.
//! - [`solvers`]: SE(3) utilities, Adam, rigid registration and scene-flow estimation.
//! - [`eval`]: rotation/translation error and end-point-error style flow metrics.
//! - [`io`]: XYZ/PLY loading and saving, synthetic scenes, JSON result schema.
//! - [`cli`]: the `clgd` command-line front end.
//!
//! ```
//! use clgd::prelude::*;
//!
//! let a = PointCloud::from_rows(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0],
//!                                 [1.0, 1.0, 0.0], [1.0, 0.0, 1.0]]).unwrap();
//! let params = ClgdParams::default();
//! let refs = generate_references(&a, Some(&a), &params.reference).unwrap();
//! let report = clgd_distance(&a, &a, &refs, &params).unwrap();
//! assert_eq!(report.value, 0.0);
//! ```

// `!(x >= 0.0)` style checks also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod cli;
pub mod error;
pub mod eval;
pub mod io;
pub mod metric;
pub mod pcore;
pub mod reference;
pub mod solvers;

pub use error::{Error, Result};

/// 3-vector used for positions, offsets and gradients.
pub type Vec3 = nalgebra::Vector3<f64>;
/// 3x3 matrix used for rotations.
pub type Mat3 = nalgebra::Matrix3<f64>;

pub mod prelude {
    pub use crate::baselines::{chamfer, chamfer_gradient, emd_exact, hausdorff};
    pub use crate::eval::{flow_error, registration_error};
    pub use crate::metric::{
        clgd_distance, clgd_gradient, directional_distance, symmetric_clgd, ClgdParams,
    };
    pub use crate::pcore::{PointCloud, SpatialIndex};
    pub use crate::reference::{generate_references, ReferenceParams, ReferenceSet, Selected};
    pub use crate::solvers::{
        estimate_flow, register_rigid, FlowConfig, Metric, OptimizerConfig, RigidTransform,
    };
    pub use crate::{Error, Mat3, Result, Vec3};
}
