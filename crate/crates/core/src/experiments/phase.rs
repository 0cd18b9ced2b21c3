//! Success-rate grids over `(r, ρ)`.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::rse;
use super::rng::stream_seed;
use super::synthetic::{gen_synthetic, SyntheticSpec};
use crate::completion::{tmatrix_admm_observed, CompletionConfig, Iterate};
use crate::error::{Error, Result};
use crate::tmatrix::TMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseGridSpec {
    pub dim: usize,
    pub scalar_shape: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Missing fractions `ρ`.
    pub missing: Vec<f64>,
    pub trials: usize,
    /// A trial succeeds when its RSE is strictly below this.
    pub threshold: f64,
    pub seed: u64,
    pub config: CompletionConfig,
}

/// One completed trial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseTrial {
    pub r: usize,
    pub rho: f64,
    pub trial: usize,
    pub rse: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Aggregate over the trials of one `(r, ρ)` cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseCell {
    pub r: usize,
    pub rho: f64,
    pub success_rate: f64,
    pub mean_rse: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseGrid {
    pub cells: Vec<PhaseCell>,
    pub trials: Vec<PhaseTrial>,
}

/// Seed of the synthetic instance for one trial; independent of execution
/// order.
pub fn trial_seed(seed: u64, r: usize, rho: f64, trial: usize) -> u64 {
    stream_seed(seed, &[r as u64, rho.to_bits(), trial as u64])
}

/// Runs one seeded synthetic completion and measures its RSE.
pub fn run_trial(spec: &PhaseGridSpec, r: usize, rho: f64, trial: usize) -> Result<PhaseTrial> {
    run_trial_observed(spec, r, rho, trial, |_| {})
}

/// [`run_trial`] with a callback after every ADMM iteration.
pub fn run_trial_observed(
    spec: &PhaseGridSpec,
    r: usize,
    rho: f64,
    trial: usize,
    observe: impl FnMut(&Iterate<TMatrix<f64>>),
) -> Result<PhaseTrial> {
    let instance = gen_synthetic::<f64>(&SyntheticSpec {
        dim: spec.dim,
        scalar_shape: spec.scalar_shape.clone(),
        rank: r,
        missing: rho,
        seed: trial_seed(spec.seed, r, rho, trial),
    })?;
    let out = tmatrix_admm_observed(&instance.truth, &instance.mask, &spec.config, observe)?;
    Ok(PhaseTrial {
        r,
        rho,
        trial,
        rse: rse(instance.truth.body(), out.x.body())?,
        iterations: out.trace.iterations(),
        converged: out.trace.converged,
    })
}

/// Runs every `(r, ρ, trial)` combination (in parallel) and aggregates per
/// cell. Cells are ordered by `r`, then `ρ`, as given.
pub fn phase_grid(spec: &PhaseGridSpec) -> Result<PhaseGrid> {
    if spec.ranks.is_empty() || spec.missing.is_empty() || spec.trials == 0 {
        return Err(Error::InvalidParameter(
            "phase grid ranges and trial count must be non-empty".into(),
        ));
    }
    if spec.threshold.is_nan() {
        return Err(Error::InvalidParameter("threshold must not be NaN".into()));
    }
    spec.config.validate()?;
    let jobs: Vec<(usize, f64, usize)> = spec
        .ranks
        .iter()
        .flat_map(|&r| {
            spec.missing
                .iter()
                .flat_map(move |&rho| (0..spec.trials).map(move |t| (r, rho, t)))
        })
        .collect();
    let trials: Vec<PhaseTrial> = jobs
        .par_iter()
        .map(|&(r, rho, t)| run_trial(spec, r, rho, t))
        .collect::<Result<_>>()?;
    let cells = trials
        .chunks(spec.trials)
        .map(|chunk| {
            let n = chunk.len() as f64;
            PhaseCell {
                r: chunk[0].r,
                rho: chunk[0].rho,
                success_rate: chunk.iter().filter(|t| t.rse < spec.threshold).count() as f64 / n,
                mean_rse: chunk.iter().map(|t| t.rse).sum::<f64>() / n,
            }
        })
        .collect();
    Ok(PhaseGrid { cells, trials })
}

/// CSV with header `r,rho,success_rate,mean_rse`.
pub fn write_cells_csv<W: Write>(cells: &[PhaseCell], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "rho", "success_rate", "mean_rse"])?;
    for c in cells {
        w.write_record([
            c.r.to_string(),
            c.rho.to_string(),
            c.success_rate.to_string(),
            c.mean_rse.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// CSV with header `r,rho,trial,rse,iterations,converged`.
pub fn write_trials_csv<W: Write>(trials: &[PhaseTrial], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for t in trials {
        w.serialize(t)?;
    }
    if trials.is_empty() {
        w.write_record(["r", "rho", "trial", "rse", "iterations", "converged"])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

const VIRIDIS: [[f64; 3]; 5] = [
    [68.0, 1.0, 84.0],
    [59.0, 82.0, 139.0],
    [33.0, 145.0, 140.0],
    [94.0, 201.0, 98.0],
    [253.0, 231.0, 37.0],
];

/// Built-in five-stop viridis approximation for `v ∈ [0, 1]`.
pub fn colormap(v: f64) -> [u8; 3] {
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
    let x = v * (VIRIDIS.len() - 1) as f64;
    let i = (x.floor() as usize).min(VIRIDIS.len() - 2);
    let f = x - i as f64;
    let mut out = [0u8; 3];
    for (k, o) in out.iter_mut().enumerate() {
        *o = (VIRIDIS[i][k] + f * (VIRIDIS[i + 1][k] - VIRIDIS[i][k])).round() as u8;
    }
    out
}

/// Renders success rates as a PNG: `ρ` increases left to right, `r`
/// bottom to top, each cell `cell_px` pixels square.
pub fn render_heatmap(cells: &[PhaseCell], cell_px: usize, path: impl AsRef<Path>) -> Result<()> {
    let mut ranks: Vec<usize> = cells.iter().map(|c| c.r).collect();
    ranks.sort_unstable();
    ranks.dedup();
    let mut rhos: Vec<f64> = cells.iter().map(|c| c.rho).collect();
    rhos.sort_by(f64::total_cmp);
    rhos.dedup();
    if ranks.is_empty() || cell_px == 0 {
        return Err(Error::InvalidParameter("nothing to render".into()));
    }
    let (w, h) = (rhos.len() * cell_px, ranks.len() * cell_px);
    let mut bytes = vec![0u8; w * h * 3];
    for c in cells {
        let col = rhos.iter().position(|&v| v == c.rho).expect("present");
        let row = ranks.len() - 1 - ranks.iter().position(|&v| v == c.r).expect("present");
        let rgb = colormap(c.success_rate);
        for y in row * cell_px..(row + 1) * cell_px {
            for x in col * cell_px..(col + 1) * cell_px {
                bytes[(y * w + x) * 3..(y * w + x) * 3 + 3].copy_from_slice(&rgb);
            }
        }
    }
    crate::image_io::write_u8(path.as_ref(), &bytes, w, h, 3)
}
