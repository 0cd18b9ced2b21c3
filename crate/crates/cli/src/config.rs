//! Plain-text configuration. Keys are the long flag names; a flag on the
//! command line wins over the file, the file wins over built-in defaults.

use std::path::{Path, PathBuf};

use htnn::{BoundaryPolicy, CompletionConfig, Neighborhood};
use serde::Deserialize;

use crate::cli::SolverArgs;
use crate::error::CliError;

/// `missing` is a single fraction for `complete` and a list for `synth`.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn into_vec(self) -> Vec<f64> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Deserialize, Debug, Default)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub missing: Option<OneOrMany>,
    pub neighborhood: Option<Neighborhood>,
    pub boundary: Option<BoundaryPolicy>,
    pub tau0: Option<f64>,
    pub alpha: Option<f64>,
    pub tau_min: Option<f64>,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub strict: Option<bool>,
    pub out: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub mask: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub report_csv: Option<PathBuf>,
    pub save_mask: Option<PathBuf>,
    pub save_masked: Option<PathBuf>,
    pub dim: Option<usize>,
    pub scalar_shape: Option<String>,
    pub ranks: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub threshold: Option<f64>,
    pub trials_out: Option<PathBuf>,
    pub heatmap: Option<PathBuf>,
    pub cell_px: Option<usize>,
    pub image: Option<PathBuf>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Solver settings: flag, then file, then the library defaults.
    pub fn solver(&self, flags: &SolverArgs) -> (CompletionConfig, bool) {
        let d = CompletionConfig::default();
        let cfg = CompletionConfig {
            tau0: flags.tau0.or(self.tau0).unwrap_or(d.tau0),
            alpha: flags.alpha.or(self.alpha).unwrap_or(d.alpha),
            tau_min: flags.tau_min.or(self.tau_min).unwrap_or(d.tau_min),
            max_iters: flags.max_iters.or(self.max_iters).unwrap_or(d.max_iters),
            rel_tol: flags.tol.or(self.tol).unwrap_or(d.rel_tol),
        };
        (cfg, flags.strict || self.strict.unwrap_or(false))
    }
}

/// Parses `3x3x3` (or a single extent, `4`).
pub fn parse_shape(text: &str) -> Result<Vec<usize>, CliError> {
    let shape: Vec<usize> = text
        .split(['x', 'X'])
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad shape '{text}', expected e.g. 3x3x3")))?;
    if shape.is_empty() || shape.contains(&0) {
        return Err(CliError::Usage(format!("bad shape '{text}': extents must be positive")));
    }
    Ok(shape)
}
