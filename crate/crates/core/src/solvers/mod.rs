//! Gradient-based solvers built on the point-cloud metrics.
//!
//! Both solvers keep the target cloud static and move the source. With the
//! CLGD metric the reference set is generated from the target (with the
//! initial source appended when configured) once per solve, unless
//! [`OptimizerConfig::resample_references`] is set.

mod adam;
mod flow;
mod registration;
pub mod se3;

pub use adam::{adam_step, AdamState, OptimizerConfig};
pub use flow::{estimate_flow, smoothness, FlowConfig, Smoothness};
pub use registration::register_rigid;
pub use se3::{se3_exp, se3_log, RigidTransform};

use serde::{Deserialize, Serialize};

use crate::baselines::{chamfer_gradient, emd_gradient};
use crate::metric::{CalibratedField, ClgdParams};
use crate::pcore::PointCloud;
use crate::reference::{generate_references, ReferenceParams};
use crate::{Result, Vec3};

/// Loss driving a solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Metric {
    Clgd(ClgdParams),
    #[serde(rename = "cd")]
    Chamfer,
    Emd,
}

impl Metric {
    pub fn clgd() -> Self {
        Metric::Clgd(ClgdParams::default())
    }

    pub fn label(&self) -> &'static str {
        match self {
            Metric::Clgd(_) => "clgd",
            Metric::Chamfer => "cd",
            Metric::Emd => "emd",
        }
    }
}

/// Per-iteration record of a solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveTrace {
    /// Objective at each evaluated iterate, starting from the initialization.
    pub objective: Vec<f64>,
    pub best_iteration: usize,
    pub best_objective: f64,
    pub wall_clock_s: f64,
    /// Every hyperparameter of the solve, including seeds.
    pub config: serde_json::Value,
}

/// A metric bound to a static target, evaluated against a moving cloud.
pub(crate) enum Objective<'a> {
    Clgd {
        field: CalibratedField,
        target: &'a PointCloud,
        initial_source: &'a PointCloud,
        params: ClgdParams,
    },
    Chamfer(&'a PointCloud),
    Emd(&'a PointCloud),
}

impl<'a> Objective<'a> {
    pub(crate) fn new(metric: &Metric, target: &'a PointCloud, source: &'a PointCloud) -> Result<Self> {
        Ok(match metric {
            Metric::Clgd(params) => {
                params.validate()?;
                let refs = generate_references(target, Some(source), &params.reference)?;
                Objective::Clgd {
                    field: CalibratedField::new(target, &refs, params)?,
                    target,
                    initial_source: source,
                    params: *params,
                }
            }
            Metric::Chamfer => Objective::Chamfer(target),
            Metric::Emd => {
                // Surface size mismatches and cap violations before iterating.
                crate::baselines::emd_exact(target, source)?;
                Objective::Emd(target)
            }
        })
    }

    /// Regenerates the reference set for iteration `iteration`.
    pub(crate) fn resample(&mut self, iteration: usize) -> Result<()> {
        if let Objective::Clgd {
            field,
            target,
            initial_source,
            params,
        } = self
        {
            let reference = ReferenceParams {
                seed: params.reference.seed.wrapping_add(iteration as u64),
                ..params.reference
            };
            let refs = generate_references(target, Some(initial_source), &reference)?;
            *field = CalibratedField::new(target, &refs, params)?;
        }
        Ok(())
    }

    pub(crate) fn value_and_gradient(&self, moving: &PointCloud) -> Result<(f64, Vec<Vec3>)> {
        match self {
            Objective::Clgd { field, .. } => field.gradient(moving),
            Objective::Chamfer(target) => Ok(chamfer_gradient(target, moving)),
            Objective::Emd(target) => emd_gradient(target, moving),
        }
    }
}

/// Best-iterate bookkeeping and optional early stop.
#[derive(Debug)]
pub(crate) struct Tracker {
    objective: Vec<f64>,
    best: f64,
    best_iteration: usize,
    patience: Option<usize>,
}

impl Tracker {
    pub(crate) fn new(capacity: usize, patience: Option<usize>) -> Self {
        Self {
            objective: Vec::with_capacity(capacity),
            best: f64::INFINITY,
            best_iteration: 0,
            patience,
        }
    }

    /// Records an objective value; returns true when it is a new best.
    pub(crate) fn record(&mut self, value: f64) -> bool {
        let it = self.objective.len();
        self.objective.push(value);
        if value < self.best {
            self.best = value;
            self.best_iteration = it;
            true
        } else {
            false
        }
    }

    pub(crate) fn should_stop(&self) -> bool {
        match self.patience {
            Some(p) => self.objective.len() - 1 - self.best_iteration >= p,
            None => false,
        }
    }

    pub(crate) fn finish(self, started: std::time::Instant, config: serde_json::Value) -> SolveTrace {
        SolveTrace {
            objective: self.objective,
            best_iteration: self.best_iteration,
            best_objective: self.best,
            wall_clock_s: started.elapsed().as_secs_f64(),
            config,
        }
    }
}

pub(crate) fn log_progress(cfg: &OptimizerConfig, it: usize, value: f64) {
    if cfg.log_every > 0 && it.is_multiple_of(cfg.log_every) {
        eprintln!("iter {it:>5}  objective {value:.6e}");
    }
}
