use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{czero, Real};
use crate::spectral::ComplexArrayN;
use crate::tmatrix::TMatrix;

/// Set of observed positions over an operand's index domain, stored as one
/// flag per entry in row-major order.
///
/// For a plain `D1 x D2` matrix the domain is `[D1, D2]`; for a t-matrix it
/// is the full shape of its underlying array, so a t-scalar may be partially
/// observed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationMask {
    shape: Vec<usize>,
    observed: Vec<bool>,
}

impl ObservationMask {
    pub fn new(shape: Vec<usize>, observed: Vec<bool>) -> Result<Self> {
        let len = crate::spectral::check_shape(&shape)?;
        if observed.len() != len {
            return Err(Error::DataLength {
                shape,
                len: observed.len(),
            });
        }
        Ok(Self { shape, observed })
    }

    pub fn full(shape: Vec<usize>) -> Result<Self> {
        let len = crate::spectral::check_shape(&shape)?;
        Ok(Self {
            shape,
            observed: vec![true; len],
        })
    }

    /// Mask with the given row-major linear positions missing.
    pub fn with_missing(shape: Vec<usize>, missing: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = Self::full(shape)?;
        for i in missing {
            if i >= mask.observed.len() {
                return Err(Error::InvalidParameter(format!(
                    "missing position {i} outside a domain of {} entries",
                    mask.observed.len()
                )));
            }
            mask.observed[i] = false;
        }
        Ok(mask)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.observed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observed.is_empty()
    }

    pub fn flags(&self) -> &[bool] {
        &self.observed
    }

    pub fn is_observed(&self, linear: usize) -> bool {
        self.observed[linear]
    }

    pub fn observed_count(&self) -> usize {
        self.observed.iter().filter(|&&o| o).count()
    }

    pub fn missing_count(&self) -> usize {
        self.len() - self.observed_count()
    }

    pub fn complement(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            observed: self.observed.iter().map(|o| !o).collect(),
        }
    }

    /// Fails unless the observed set is a non-empty proper subset.
    pub fn require_proper(&self) -> Result<()> {
        let observed = self.observed_count();
        if observed == 0 || observed == self.len() {
            return Err(Error::DegenerateMask {
                observed,
                total: self.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_domain(&self, shape: &[usize]) -> Result<()> {
        if self.shape != shape {
            return Err(Error::ShapeMismatch {
                left: self.shape.clone(),
                right: shape.to_vec(),
            });
        }
        Ok(())
    }
}

/// Operands whose entries can be selectively zeroed by a mask.
pub trait Maskable: Sized {
    /// Index domain the mask must match.
    fn mask_domain(&self) -> Vec<usize>;

    /// Keeps the entries whose observation flag equals `keep_observed` and
    /// zeros the rest.
    fn keep_where(&self, mask: &ObservationMask, keep_observed: bool) -> Result<Self>;
}

/// Keeps observed entries and zeros the rest.
pub fn mask_keep<A: Maskable>(a: &A, mask: &ObservationMask) -> Result<A> {
    a.keep_where(mask, true)
}

/// Keeps missing entries and zeros the observed ones.
pub fn mask_keep_missing<A: Maskable>(a: &A, mask: &ObservationMask) -> Result<A> {
    a.keep_where(mask, false)
}

impl<T: Real> Maskable for DMatrix<T> {
    fn mask_domain(&self) -> Vec<usize> {
        vec![self.nrows(), self.ncols()]
    }

    fn keep_where(&self, mask: &ObservationMask, keep_observed: bool) -> Result<Self> {
        mask.require_domain(&self.mask_domain())?;
        let cols = self.ncols();
        Ok(DMatrix::from_fn(self.nrows(), cols, |i, j| {
            if mask.observed[i * cols + j] == keep_observed {
                self[(i, j)]
            } else {
                T::zero()
            }
        }))
    }
}

impl<T: Real> Maskable for ComplexArrayN<T> {
    fn mask_domain(&self) -> Vec<usize> {
        self.shape().to_vec()
    }

    fn keep_where(&self, mask: &ObservationMask, keep_observed: bool) -> Result<Self> {
        mask.require_domain(self.shape())?;
        let data = self
            .data()
            .iter()
            .zip(&mask.observed)
            .map(|(&z, &o)| if o == keep_observed { z } else { czero() })
            .collect();
        ComplexArrayN::new(self.shape().to_vec(), data)
    }
}

impl<T: Real> Maskable for TMatrix<T> {
    fn mask_domain(&self) -> Vec<usize> {
        self.body().shape().to_vec()
    }

    fn keep_where(&self, mask: &ObservationMask, keep_observed: bool) -> Result<Self> {
        TMatrix::new(self.body().keep_where(mask, keep_observed)?, self.scalar_order())
    }
}
