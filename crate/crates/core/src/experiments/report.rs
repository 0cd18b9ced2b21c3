//! Evaluation reports as JSON (with wall time) and CSV (without, so that
//! identical runs give identical bytes).

use std::io::Write;

use serde::{Serialize, Serializer};

use crate::error::Result;

fn finite_or_tag<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        // JSON has no infinities; identical images report PSNR "inf".
        s.serialize_str(&v.to_string())
    }
}

fn opt_finite_or_tag<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => finite_or_tag(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub label: String,
    #[serde(serialize_with = "finite_or_tag")]
    pub rse: f64,
    #[serde(serialize_with = "opt_finite_or_tag")]
    pub psnr_db: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    #[serde(serialize_with = "opt_finite_or_tag")]
    pub final_residual: Option<f64>,
    pub wall_time_s: f64,
    /// Echo of the configuration that produced the run.
    pub config: serde_json::Value,
}

impl EvalReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// CSV with header `label,rse,psnr_db,iterations,converged,final_residual`.
/// Wall time is deliberately omitted.
pub fn write_reports_csv<W: Write>(reports: &[EvalReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["label", "rse", "psnr_db", "iterations", "converged", "final_residual"])?;
    for r in reports {
        w.write_record([
            r.label.clone(),
            r.rse.to_string(),
            opt(r.psnr_db),
            r.iterations.to_string(),
            r.converged.to_string(),
            opt(r.final_residual),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
