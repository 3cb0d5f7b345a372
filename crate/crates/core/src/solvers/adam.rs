use serde::{Deserialize, Serialize};

/// First-order optimizer settings shared by both solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub iterations: usize,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    /// Print progress to stderr every this many iterations; 0 disables.
    pub log_every: usize,
    /// Regenerate the reference set every iteration instead of once per solve.
    pub resample_references: bool,
    /// Stop after this many iterations without improving the best objective.
    pub early_stop_patience: Option<usize>,
}

impl OptimizerConfig {
    /// 1000 Adam iterations at learning rate 0.02.
    pub fn registration() -> Self {
        Self {
            iterations: 1000,
            learning_rate: 0.02,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            log_every: 0,
            resample_references: false,
            early_stop_patience: None,
        }
    }

    /// 500 Adam iterations at learning rate 0.01.
    pub fn flow() -> Self {
        Self {
            iterations: 500,
            learning_rate: 0.01,
            ..Self::registration()
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        use crate::Error;
        if self.iterations == 0 {
            return Err(Error::param("iters", "must be at least 1"));
        }
        if !(self.learning_rate > 0.0) || !self.learning_rate.is_finite() {
            return Err(Error::param("lr", "must be positive"));
        }
        if !(0.0 < self.beta1 && self.beta1 < 1.0) || !(0.0 < self.beta2 && self.beta2 < 1.0) {
            return Err(Error::param("adam-betas", "must lie in (0, 1)"));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::param("adam-eps", "must be positive"));
        }
        Ok(())
    }
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self::registration()
    }
}

/// Bias-corrected Adam moments for a flat parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub t: u64,
}

impl AdamState {
    pub fn new(dim: usize) -> Self {
        Self {
            m: vec![0.0; dim],
            v: vec![0.0; dim],
            t: 0,
        }
    }
}

/// One Adam update of `params` in place.
pub fn adam_step(state: &mut AdamState, params: &mut [f64], grad: &[f64], cfg: &OptimizerConfig) {
    assert_eq!(params.len(), grad.len());
    assert_eq!(state.m.len(), grad.len());
    state.t += 1;
    let t = state.t as i32;
    let bc1 = 1.0 - cfg.beta1.powi(t);
    let bc2 = 1.0 - cfg.beta2.powi(t);
    for i in 0..params.len() {
        let g = grad[i];
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
        let m_hat = state.m[i] / bc1;
        let v_hat = state.v[i] / bc2;
        params[i] -= cfg.learning_rate * m_hat / (v_hat.sqrt() + cfg.epsilon);
    }
}
