use std::time::Instant;

use serde_json::json;

use super::se3::{pullback_gradient, se3_exp, RigidTransform};
use super::{adam_step, log_progress, AdamState, Metric, Objective, OptimizerConfig, SolveTrace, Tracker};
use crate::pcore::PointCloud;
use crate::Result;

/// Finds the rigid transform minimizing `metric(R·src + t, tgt)`.
///
/// Starts from the identity and runs Adam directly on the tangent
/// coordinates `xi`. Returns the best evaluated iterate.
pub fn register_rigid(
    src: &PointCloud,
    tgt: &PointCloud,
    metric: &Metric,
    opt: &OptimizerConfig,
) -> Result<(RigidTransform, SolveTrace)> {
    opt.validate()?;
    let started = Instant::now();
    let mut objective = Objective::new(metric, tgt, src)?;
    let mut xi = [0.0; 6];
    let mut best_xi = xi;
    let mut state = AdamState::new(6);
    let mut tracker = Tracker::new(opt.iterations, opt.early_stop_patience);

    for it in 0..opt.iterations {
        if opt.resample_references && it > 0 {
            objective.resample(it)?;
        }
        let (r, t) = se3_exp(&xi);
        let moved = src.transformed(&r, &t);
        let (value, point_grads) = objective.value_and_gradient(&moved)?;
        log_progress(opt, it, value);
        if tracker.record(value) {
            best_xi = xi;
        }
        if tracker.should_stop() {
            break;
        }
        let grad = pullback_gradient(&xi, moved.points(), &point_grads);
        adam_step(&mut state, &mut xi, &grad, opt);
    }

    let config = json!({
        "solver": "register",
        "metric": metric,
        "optimizer": opt,
        "parameterization": "se3 [omega; tau], identity init",
        "reference_rng": crate::reference::RNG_ALGORITHM,
    });
    Ok((RigidTransform::from_xi(best_xi), tracker.finish(started, config)))
}
