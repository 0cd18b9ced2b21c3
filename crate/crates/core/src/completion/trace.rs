use std::io::Write;

use serde::Serialize;

use crate::error::Result;

/// One ADMM iteration: the penalty used, the relative primal residual
/// `||M - X - E||_F / ||M||_F` after the iteration, and the nuclear norm of
/// the new `X`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iter: usize,
    pub tau: f64,
    pub residual: f64,
    pub nuclear_norm: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CompletionTrace {
    pub records: Vec<IterationRecord>,
    pub converged: bool,
}

impl CompletionTrace {
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    pub fn final_residual(&self) -> Option<f64> {
        self.records.last().map(|r| r.residual)
    }

    /// CSV with header `iter,tau,residual,nuclear_norm`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r)?;
        }
        if self.records.is_empty() {
            w.write_record(["iter", "tau", "residual", "nuclear_norm"])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}
