//! Tubal, average, higher-order and trace ranks.

use num_rational::Ratio;

use super::decomp::slice_singular_values;
use super::TMatrix;
use crate::error::{Error, Result};
use crate::scalar::{creal, rmax, Real};
use crate::spectral::ComplexArrayN;
use crate::tscalar::{TScalar, TScalarSpectrum};

/// How small a slice singular value must be to count as zero.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum RankTolerance {
    /// `K · max(D1, D2) · eps · σ_max`, with `σ_max` the largest singular
    /// value over *all* slices: the usual dense-matrix default applied to the
    /// block-diagonal representation. It dominates the per-slice rule
    /// `max(D1, D2) · eps · σ_max(slice)`, which would count transform
    /// round-off in numerically empty slices as full rank.
    #[default]
    Auto,
    /// Fixed threshold; values strictly greater count.
    Absolute(f64),
}

pub(crate) fn auto_tolerance<T: Real>(x: &TMatrix<T>, svals: &[Vec<T>]) -> T {
    let smax = svals.iter().flat_map(|s| s.first().copied()).fold(T::zero(), rmax);
    let (r, c) = x.dims();
    T::lit((x.slice_count() * r.max(c)) as f64) * T::default_epsilon() * smax
}

/// Higher-order rank: the nonnegative t-scalar whose spectral entries are
/// the ranks of the spectral slices.
#[derive(Clone, Debug, PartialEq)]
pub struct HigherOrderRank<T> {
    value: TScalar<T>,
    slice_ranks: Vec<usize>,
}

impl<T: Real> HigherOrderRank<T> {
    pub fn value(&self) -> &TScalar<T> {
        &self.value
    }

    /// Rank of each spectral slice, in canonical multi-index order.
    pub fn slice_ranks(&self) -> &[usize] {
        &self.slice_ranks
    }

    /// Largest slice rank.
    pub fn tubal(&self) -> usize {
        self.slice_ranks.iter().copied().max().unwrap_or(0)
    }

    /// Mean slice rank, kept exact.
    pub fn average(&self) -> Ratio<usize> {
        Ratio::new(self.trace(), self.slice_ranks.len())
    }

    /// Sum of slice ranks; the rank of the block-diagonal representation.
    pub fn trace(&self) -> usize {
        self.slice_ranks.iter().sum()
    }
}

impl<T: Real> TMatrix<T> {
    pub fn higher_order_rank(&self, tol: RankTolerance) -> Result<HigherOrderRank<T>> {
        let svals = slice_singular_values(self)?;
        let threshold = match tol {
            RankTolerance::Auto => auto_tolerance(self, &svals),
            RankTolerance::Absolute(t) if t >= 0.0 && t.is_finite() => T::lit(t),
            RankTolerance::Absolute(t) => return Err(Error::InvalidParameter(format!("rank tolerance {t}"))),
        };
        let slice_ranks: Vec<usize> = svals
            .iter()
            .map(|s| s.iter().filter(|&&v| v > threshold).count())
            .collect();
        let spectrum = ComplexArrayN::new(
            self.scalar_shape().to_vec(),
            slice_ranks.iter().map(|&r| creal(T::lit(r as f64))).collect(),
        )?;
        // Slice ranks of a real body are conjugate-symmetric, so the value is real.
        let value = TScalar::from_spectrum(&TScalarSpectrum::new(spectrum), self.is_real())?;
        Ok(HigherOrderRank { value, slice_ranks })
    }

    pub fn tubal_rank(&self, tol: RankTolerance) -> Result<usize> {
        Ok(self.higher_order_rank(tol)?.tubal())
    }

    pub fn average_rank(&self, tol: RankTolerance) -> Result<Ratio<usize>> {
        Ok(self.higher_order_rank(tol)?.average())
    }

    pub fn trace_rank(&self, tol: RankTolerance) -> Result<usize> {
        Ok(self.higher_order_rank(tol)?.trace())
    }
}
