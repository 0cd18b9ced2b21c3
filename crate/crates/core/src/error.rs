use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mode {mode} for an array of order {order}")]
    InvalidMode { mode: usize, order: usize },

    #[error("mode {0} listed more than once")]
    DuplicateMode(usize),

    #[error("invalid axis permutation {perm:?} for an array of order {order}")]
    InvalidPermutation { perm: Vec<usize>, order: usize },

    #[error("cannot reshape {from:?} ({from_len} entries) into {to:?} ({to_len} entries)")]
    ReshapeMismatch {
        from: Vec<usize>,
        from_len: usize,
        to: Vec<usize>,
        to_len: usize,
    },

    #[error("invalid shape {0:?}: extents must be positive and at least one axis is required")]
    InvalidShape(Vec<usize>),

    #[error("data length {len} does not match shape {shape:?}")]
    DataLength { shape: Vec<usize>, len: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("SVD did not converge on spectral slice {slice}")]
    SvdNoConvergence { slice: usize },

    #[error("imaginary residue {residue:e} exceeds tolerance {tol:e} for a real-bodied result")]
    ImaginaryResidue { residue: f64, tol: f64 },

    #[error("Schatten norm requires p >= 1, got {0}")]
    InvalidSchattenOrder(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("observation mask must be a non-empty proper subset: {observed} of {total} entries observed")]
    DegenerateMask { observed: usize, total: usize },

    #[error("input contains a non-finite value at linear index {0}")]
    NonFinite(usize),

    #[error("neighborhood {rows}x{cols} is invalid: {reason}")]
    InvalidNeighborhood {
        rows: usize,
        cols: usize,
        reason: &'static str,
    },

    #[error("mask index {index:?} (entry {entry}) is out of range for image {shape:?}")]
    MaskIndexOutOfRange {
        entry: usize,
        index: Vec<i64>,
        shape: Vec<usize>,
    },

    #[error("representation of size {0} exceeds the materialization limit")]
    RepresentationTooLarge(usize),

    #[error("reference has zero norm")]
    ZeroReference,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Format(String),
}

impl Error {
    /// Errors caused by bad user input rather than numerical trouble.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::SvdNoConvergence { .. } | Error::ImaginaryResidue { .. })
    }
}
