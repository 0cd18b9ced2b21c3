//! Desk-scale experiment drivers: synthetic instances, phase grids, image
//! completion, metrics and reports.

pub mod metrics;
pub mod phase;
pub mod pipeline;
pub mod report;
pub mod rng;
pub mod synthetic;

pub use metrics::{psnr, rse};
pub use phase::{
    phase_grid, render_heatmap, run_trial, run_trial_observed, trial_seed, write_cells_csv, write_trials_csv,
    PhaseCell, PhaseGrid, PhaseGridSpec, PhaseTrial,
};
pub use pipeline::{complete_image, complete_image_observed, random_pixel_mask, ImageCompletion, ImageCompletionSpec};
pub use report::{write_reports_csv, EvalReport};
pub use synthetic::{gen_synthetic, SyntheticInstance, SyntheticSpec};
