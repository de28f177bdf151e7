use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Knobs of the excitation/relaxation dynamics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfig {
    /// Longest composite searched by the fork rule.
    pub fork_depth: usize,
    /// Softmax temperature over candidate composite weights.
    pub temperature: f64,
    /// Anti-fork runs on steps `t` with `t % relax_every == 0`.
    pub relax_every: u32,
    /// Consecutive failed fork checks before a leg may be relaxed.
    pub grace: u32,
    /// Weight given to a metaphor morphism that did not exist yet.
    pub epsilon: f64,
    /// Weight increment applied to reinforced components.
    pub eta: f64,
    /// Threshold instead of sampling, argmax instead of softmax draws.
    pub deterministic: bool,
    /// Threshold for deterministic mode.
    pub theta: f64,
    pub max_steps: u32,
    pub seed: u64,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            fork_depth: 2,
            temperature: 1.0,
            relax_every: 5,
            grace: 2,
            epsilon: 0.05,
            eta: 0.1,
            deterministic: false,
            theta: 0.5,
            max_steps: 20,
            seed: 0,
        }
    }
}

impl RuleConfig {
    pub fn deterministic() -> Self {
        RuleConfig {
            deterministic: true,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_owned()));
        if self.fork_depth == 0 {
            return bad("fork_depth must be positive");
        }
        if !(self.temperature.is_finite() && self.temperature > 0.0) {
            return bad("temperature must be a positive real");
        }
        if self.relax_every == 0 {
            return bad("relax_every must be positive");
        }
        if self.grace == 0 {
            return bad("grace must be positive");
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return bad("epsilon must lie in (0, 1]");
        }
        if !(self.eta.is_finite() && self.eta >= 0.0) {
            return bad("eta must be a non-negative real");
        }
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return bad("theta must lie in (0, 1]");
        }
        Ok(())
    }
}
