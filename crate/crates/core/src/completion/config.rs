use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// ADMM hyperparameters shared by both solvers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompletionConfig {
    /// Initial penalty `τ_0`.
    pub tau0: f64,
    /// Penalty decay `α ∈ (0, 1)`.
    pub alpha: f64,
    /// Penalty floor.
    pub tau_min: f64,
    pub max_iters: usize,
    /// Stop once `||M - X - E||_F / ||M||_F` falls below this.
    pub rel_tol: f64,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        Self {
            tau0: 1e4,
            alpha: 0.9,
            tau_min: 1e-6,
            max_iters: 500,
            rel_tol: 1e-8,
        }
    }
}

impl CompletionConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidParameter(what));
        if !(self.tau0.is_finite() && self.tau0 > 0.0) {
            return bad(format!("tau0 must be positive and finite, got {}", self.tau0));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if !(self.tau_min > 0.0 && self.tau_min <= self.tau0) {
            return bad(format!(
                "tau_min must satisfy 0 < tau_min <= tau0, got {}",
                self.tau_min
            ));
        }
        if self.max_iters == 0 {
            return bad("max_iters must be at least 1".into());
        }
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return bad(format!("rel_tol must be positive, got {}", self.rel_tol));
        }
        Ok(())
    }
}
