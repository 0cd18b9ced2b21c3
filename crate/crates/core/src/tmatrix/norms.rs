//! Higher-order Schatten norms, the real inner product and the block-diagonal
//! representation.

use nalgebra::DMatrix;
use num_complex::Complex;

use super::decomp::slice_singular_values;
use super::TMatrix;
use crate::error::{Error, Result};
use crate::scalar::{creal, czero, Real};
use crate::spectral::ComplexArrayN;
use crate::tscalar::{TScalar, TScalarSpectrum};

/// Largest `K · max(D1, D2)` for which the block-diagonal representation is
/// materialized.
pub const MAX_REPRESENTATION_DIM: usize = 512;

fn p_sum<T: Real>(s: &[T], p: T) -> T {
    if p == T::one() {
        s.iter().fold(T::zero(), |a, &b| a + b)
    } else if p == T::lit(2.0) {
        s.iter().fold(T::zero(), |a, &b| a + b * b)
    } else {
        s.iter().fold(T::zero(), |a, &b| a + b.powf(p))
    }
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidSchattenOrder(p))
    }
}

impl<T: Real> TMatrix<T> {
    /// Higher-order Schatten-`p` norm `N_p(X) = (Σ_n σ_n^p)^{1/p}`: a
    /// nonnegative t-scalar whose spectrum holds each slice's Schatten norm.
    /// `p = f64::INFINITY` gives the spectral norm.
    pub fn schatten_norm(&self, p: f64) -> Result<TScalar<T>> {
        check_p(p)?;
        let svals = slice_singular_values(self)?;
        let per_slice: Vec<Complex<T>> = svals
            .iter()
            .map(|s| {
                let v = if p.is_infinite() {
                    s.first().copied().unwrap_or_else(T::zero)
                } else {
                    let pt = T::lit(p);
                    p_sum(s, pt).powf(T::one() / pt)
                };
                creal(v)
            })
            .collect();
        let spectrum = ComplexArrayN::new(self.scalar_shape().to_vec(), per_slice)?;
        TScalar::from_spectrum(&TScalarSpectrum::new(spectrum), self.is_real())
    }

    /// Schatten-`p` norm of the block-diagonal representation.
    pub fn real_schatten(&self, p: f64) -> Result<T> {
        check_p(p)?;
        let svals = slice_singular_values(self)?;
        if p.is_infinite() {
            return Ok(svals
                .iter()
                .flat_map(|s| s.first().copied())
                .fold(T::zero(), crate::scalar::rmax));
        }
        let pt = T::lit(p);
        let total = svals.iter().fold(T::zero(), |a, s| a + p_sum(s, pt));
        Ok(total.powf(T::one() / pt))
    }

    /// Sum of all slice singular values.
    pub fn nuclear_norm(&self) -> Result<T> {
        self.real_schatten(1.0)
    }

    /// `Re trace(M(X)^H M(Y))`, equal to half the trace of the product of the
    /// real 2x2-block realifications.
    pub fn real_inner_product(&self, other: &Self) -> Result<T> {
        self.require_same_layout(other)?;
        let a = self.spectral_slices();
        let b = other.spectral_slices();
        Ok(a.iter()
            .zip(b.iter())
            .flat_map(|(x, y)| x.iter().zip(y.iter()))
            .fold(T::zero(), |acc, (x, y)| acc + (x.conj() * y).re))
    }

    /// Block-diagonal matrix `X̃_1 ⊕ … ⊕ X̃_K` of size `K·D1 x K·D2`.
    pub fn direct_sum_representation(&self) -> Result<DMatrix<Complex<T>>> {
        let (rows, cols) = self.dims();
        let k = self.slice_count();
        let size = k * rows.max(cols);
        if size > MAX_REPRESENTATION_DIM {
            return Err(Error::RepresentationTooLarge(size));
        }
        let mut out = DMatrix::from_element(k * rows, k * cols, czero());
        for (i, slice) in self.spectral_slices().iter().enumerate() {
            out.view_mut((i * rows, i * cols), (rows, cols)).copy_from(slice);
        }
        Ok(out)
    }
}
