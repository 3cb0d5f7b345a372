use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{adam_step, log_progress, AdamState, Metric, Objective, OptimizerConfig, SolveTrace, Tracker};
use crate::pcore::{PointCloud, SpatialIndex};
use crate::{Error, Result, Vec3};

/// Scene-flow solve settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    pub metric: Metric,
    /// Weight of the smoothness term.
    pub alpha: f64,
    /// Neighbors per point in the smoothness term.
    pub ks: usize,
    pub optimizer: OptimizerConfig,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            metric: Metric::clgd(),
            alpha: 50.0,
            ks: 30,
            optimizer: OptimizerConfig::flow(),
        }
    }
}

/// ℓ2 spatial smoothness over the fixed `Ks`-neighborhoods of the source:
///
/// ```text
/// (1 / (3·N·Ks)) Σ_x Σ_{x' ∈ KNN(x)} ‖F(x) − F(x')‖²
/// ```
///
/// with each point excluded from its own neighborhood.
#[derive(Debug, Clone)]
pub struct Smoothness {
    neighbors: Vec<usize>,
    ks: usize,
}

impl Smoothness {
    pub fn new(src: &PointCloud, ks: usize) -> Result<Self> {
        if ks == 0 || ks >= src.len() {
            return Err(Error::InvalidK { k: ks, n: src.len() });
        }
        let index = SpatialIndex::new(src);
        let mut neighbors = Vec::with_capacity(src.len() * ks);
        for (i, p) in src.iter().enumerate() {
            neighbors.extend(index.knn_excluding(p, ks, i)?.indices);
        }
        Ok(Self { neighbors, ks })
    }

    fn scale(&self, n: usize) -> f64 {
        1.0 / (3.0 * n as f64 * self.ks as f64)
    }

    pub fn value(&self, flow: &[Vec3]) -> f64 {
        let mut total = 0.0;
        for (x, nb) in self.neighbors.chunks(self.ks).enumerate() {
            for &y in nb {
                total += (flow[x] - flow[y]).norm_squared();
            }
        }
        total * self.scale(flow.len())
    }

    pub fn value_and_gradient(&self, flow: &[Vec3]) -> (f64, Vec<Vec3>) {
        let c = self.scale(flow.len());
        let mut grad = vec![Vec3::zeros(); flow.len()];
        let mut total = 0.0;
        for (x, nb) in self.neighbors.chunks(self.ks).enumerate() {
            for &y in nb {
                let diff = flow[x] - flow[y];
                total += diff.norm_squared();
                grad[x] += diff * (2.0 * c);
                grad[y] -= diff * (2.0 * c);
            }
        }
        (total * c, grad)
    }
}

/// Smoothness of `flow` over `src` with `ks` neighbors per point.
pub fn smoothness(flow: &[Vec3], src: &PointCloud, ks: usize) -> Result<f64> {
    if flow.len() != src.len() {
        return Err(Error::SizeMismatch {
            left: src.len(),
            right: flow.len(),
        });
    }
    Ok(Smoothness::new(src, ks)?.value(flow))
}

/// Estimates per-point offsets `F` minimizing `metric(src + F, tgt) + α·smoothness(F)`.
///
/// Starts from `F = 0` and returns the best evaluated iterate.
pub fn estimate_flow(src: &PointCloud, tgt: &PointCloud, cfg: &FlowConfig) -> Result<(Vec<Vec3>, SolveTrace)> {
    let opt = &cfg.optimizer;
    opt.validate()?;
    if !(cfg.alpha >= 0.0) || !cfg.alpha.is_finite() {
        return Err(Error::param("alpha", "must be finite and non-negative"));
    }
    let started = Instant::now();
    let mut objective = Objective::new(&cfg.metric, tgt, src)?;
    let smooth = if cfg.alpha > 0.0 {
        Some(Smoothness::new(src, cfg.ks)?)
    } else {
        None
    };
    let n = src.len();
    let mut params = vec![0.0; 3 * n];
    let mut best = params.clone();
    let mut state = AdamState::new(3 * n);
    let mut tracker = Tracker::new(opt.iterations, opt.early_stop_patience);
    let mut grad = vec![0.0; 3 * n];

    for it in 0..opt.iterations {
        if opt.resample_references && it > 0 {
            objective.resample(it)?;
        }
        let flow = unflatten(&params);
        let moved = src.displaced(&flow)?;
        let (mut value, metric_grad) = objective.value_and_gradient(&moved)?;
        for (i, g) in metric_grad.iter().enumerate() {
            grad[3 * i..3 * i + 3].copy_from_slice(g.as_slice());
        }
        if let Some(s) = &smooth {
            let (sv, sg) = s.value_and_gradient(&flow);
            value += cfg.alpha * sv;
            for (i, g) in sg.iter().enumerate() {
                for a in 0..3 {
                    grad[3 * i + a] += cfg.alpha * g[a];
                }
            }
        }
        log_progress(opt, it, value);
        if tracker.record(value) {
            best.copy_from_slice(&params);
        }
        if tracker.should_stop() {
            break;
        }
        adam_step(&mut state, &mut params, &grad, opt);
    }

    let config = json!({
        "solver": "flow",
        "metric": cfg.metric,
        "alpha": cfg.alpha,
        "ks": cfg.ks,
        "optimizer": opt,
        "initialization": "zero flow",
        "reference_rng": crate::reference::RNG_ALGORITHM,
    });
    Ok((unflatten(&best), tracker.finish(started, config)))
}

fn unflatten(params: &[f64]) -> Vec<Vec3> {
    params.chunks_exact(3).map(Vec3::from_column_slice).collect()
}
