use serde::{Deserialize, Serialize};

use super::rng::{sample_positions, standard_normal, stream};
use crate::completion::ObservationMask;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tmatrix::TMatrix;

/// Random low-rank completion instance `Y = P ∘ Q` with `P: D x r` and
/// `Q: r x D` over t-scalars of `scalar_shape`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub dim: usize,
    pub scalar_shape: Vec<usize>,
    pub rank: usize,
    /// Fraction `ρ` of entries of the underlying array that are hidden.
    pub missing: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        crate::spectral::check_shape(&self.scalar_shape)?;
        if self.dim == 0 || self.rank == 0 || self.rank > self.dim {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= r <= D, got r = {}, D = {}",
                self.rank, self.dim
            )));
        }
        if !(self.missing > 0.0 && self.missing < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "missing fraction must lie in (0, 1), got {}",
                self.missing
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SyntheticInstance<T> {
    pub truth: TMatrix<T>,
    pub mask: ObservationMask,
}

fn normal_tmatrix<T: Real>(shape: &[usize], rows: usize, cols: usize, seed: u64, label: u64) -> Result<TMatrix<T>> {
    let mut rng = stream(seed, &[label]);
    let n = shape.iter().product::<usize>() * rows * cols;
    let values: Vec<T> = (0..n).map(|_| T::lit(standard_normal(&mut rng))).collect();
    TMatrix::from_real(shape, rows, cols, &values)
}

/// Draws `P`, `Q` with i.i.d. standard-normal real bodies and hides
/// `round(ρ · len)` entries of the underlying array of `Y`, sampled
/// uniformly without replacement. Deterministic in `spec.seed`.
pub fn gen_synthetic<T: Real>(spec: &SyntheticSpec) -> Result<SyntheticInstance<T>> {
    spec.validate()?;
    let p = normal_tmatrix(&spec.scalar_shape, spec.dim, spec.rank, spec.seed, 0)?;
    let q = normal_tmatrix(&spec.scalar_shape, spec.rank, spec.dim, spec.seed, 1)?;
    let truth = p.mul(&q)?;
    let domain = truth.body().shape().to_vec();
    let missing = sample_positions(&mut stream(spec.seed, &[2]), truth.body().len(), spec.missing);
    let mask = ObservationMask::with_missing(domain, missing)?;
    Ok(SyntheticInstance { truth, mask })
}
