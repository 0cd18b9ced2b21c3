//! Slice-wise SVD machinery: TSVD, TSVT and the pseudo-inverse.

use nalgebra::{DMatrix, SVD};
use num_complex::Complex;

use super::{map_slices, Conjugate, SpectralSlices, TMatrix};
use crate::error::{Error, Result};
use crate::scalar::{creal, czero, rmax, Real};
use crate::tscalar::TScalar;

/// Compact SVD of one spectral slice: `u` is `D1 x D`, `v` is `D2 x D`,
/// singular values sorted non-increasingly.
#[derive(Clone, Debug)]
pub(crate) struct SliceSvd<T: Real> {
    pub u: DMatrix<Complex<T>>,
    pub s: Vec<T>,
    pub v: DMatrix<Complex<T>>,
}

impl<T: Real> Conjugate for SliceSvd<T> {
    fn conjugate(&self) -> Self {
        Self {
            u: self.u.conjugate(),
            s: self.s.clone(),
            v: self.v.conjugate(),
        }
    }
}

impl<T: Real> Conjugate for Vec<T> {
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

fn max_sweeps(rows: usize, cols: usize) -> usize {
    1000 * (rows + cols).max(10)
}

/// SVD of a single slice. `real` asserts the slice is real (a self-conjugate
/// slice of a real-bodied t-matrix), allowing real arithmetic.
pub(crate) fn slice_svd<T: Real>(
    m: &DMatrix<Complex<T>>,
    real: bool,
    vectors: bool,
    slice: usize,
) -> Result<SliceSvd<T>> {
    let (rows, cols) = m.shape();
    let eps = T::default_epsilon();
    let (mut u, mut s, mut v) = if real {
        let re = m.map(|z| z.re);
        let svd =
            SVD::try_new(re, vectors, vectors, eps, max_sweeps(rows, cols)).ok_or(Error::SvdNoConvergence { slice })?;
        let s: Vec<T> = svd.singular_values.iter().copied().collect();
        let u = svd.u.map(|u| u.map(creal));
        let v = svd.v_t.map(|vt| vt.transpose().map(creal));
        (u, s, v)
    } else {
        let svd = SVD::try_new(m.clone(), vectors, vectors, eps, max_sweeps(rows, cols))
            .ok_or(Error::SvdNoConvergence { slice })?;
        let s: Vec<T> = svd.singular_values.iter().copied().collect();
        (svd.u, s, svd.v_t.map(|vt| vt.adjoint()))
    };
    // Enforce non-increasing order regardless of the backend's convention.
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].partial_cmp(&s[a]).unwrap_or(std::cmp::Ordering::Equal));
    if order.iter().enumerate().any(|(i, &o)| i != o) {
        s = order.iter().map(|&i| s[i]).collect();
        u = u.map(|u| u.select_columns(&order));
        v = v.map(|v| v.select_columns(&order));
    }
    let empty = || DMatrix::zeros(0, 0);
    Ok(SliceSvd {
        u: u.unwrap_or_else(empty),
        s,
        v: v.unwrap_or_else(empty),
    })
}

/// Computes the SVD of every spectral slice, exploiting conjugate symmetry
/// of real-bodied inputs.
pub(crate) fn slice_svds<T: Real>(
    x: &TMatrix<T>,
    slices: &SpectralSlices<T>,
    vectors: bool,
) -> Result<Vec<SliceSvd<T>>> {
    map_slices(x.slice_count(), x.scalar_shape(), x.is_real(), |k, real| {
        slice_svd(slices.slice(k), real, vectors, k)
    })
}

/// Singular values of every spectral slice, each sorted non-increasingly.
pub(crate) fn slice_singular_values<T: Real>(x: &TMatrix<T>) -> Result<Vec<Vec<T>>> {
    let slices = x.spectral_slices();
    map_slices(x.slice_count(), x.scalar_shape(), x.is_real(), |k, real| {
        slice_svd(slices.slice(k), real, false, k).map(|svd| svd.s)
    })
}

/// `U diag(w) V^H`, skipping zero weights.
fn recompose<T: Real>(svd: &SliceSvd<T>, weights: &[T]) -> DMatrix<Complex<T>> {
    let mut out = DMatrix::from_element(svd.u.nrows(), svd.v.nrows(), czero());
    for (d, &w) in weights.iter().enumerate() {
        if w > T::zero() {
            let uc = svd.u.column(d) * creal(w);
            out += uc * svd.v.column(d).adjoint();
        }
    }
    out
}

/// Factors of `X = U ∘ S ∘ V*` with `D = min(D1, D2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TsvdFactors<T> {
    pub u: TMatrix<T>,
    pub s: TMatrix<T>,
    pub v: TMatrix<T>,
}

impl<T: Real> TsvdFactors<T> {
    /// `U ∘ S ∘ V*`.
    pub fn reconstruct(&self) -> Result<TMatrix<T>> {
        self.u.mul(&self.s)?.mul(&self.v.conj_transpose())
    }

    /// Diagonal t-scalars `σ_1, …, σ_D` of `S`.
    pub fn singular_values(&self) -> Vec<TScalar<T>> {
        (0..self.s.rows()).map(|d| self.s.entry(d, d)).collect()
    }
}

struct Thresholded<T: Real> {
    slice: DMatrix<Complex<T>>,
    nuclear: T,
}

impl<T: Real> Conjugate for Thresholded<T> {
    fn conjugate(&self) -> Self {
        Self {
            slice: self.slice.conjugate(),
            nuclear: self.nuclear,
        }
    }
}

impl<T: Real> TMatrix<T> {
    /// Tensorial SVD: compact SVD of every spectral slice, transformed back.
    pub fn tsvd(&self) -> Result<TsvdFactors<T>> {
        let slices = self.spectral_slices();
        let svds = slice_svds(self, &slices, true)?;
        let (rows, cols) = self.dims();
        let d = rows.min(cols);
        let shape = self.scalar_shape().to_vec();
        let mut us = Vec::with_capacity(svds.len());
        let mut ss = Vec::with_capacity(svds.len());
        let mut vs = Vec::with_capacity(svds.len());
        for svd in svds {
            ss.push(DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                d,
                svd.s.iter().map(|&s| creal(s)),
            )));
            us.push(svd.u);
            vs.push(svd.v);
        }
        let real = self.is_real();
        let build = |m: Vec<DMatrix<Complex<T>>>, r: usize, c: usize| {
            TMatrix::from_spectral_slices(&SpectralSlices::new(shape.clone(), r, c, m)?, real)
        };
        Ok(TsvdFactors {
            u: build(us, rows, d)?,
            s: build(ss, d, d)?,
            v: build(vs, cols, d)?,
        })
    }

    /// Tensorial singular value thresholding: every slice singular value is
    /// shrunk by `tau` and clamped at zero.
    pub fn tsvt(&self, tau: T) -> Result<TMatrix<T>> {
        self.tsvt_with_nuclear(tau).map(|(x, _)| x)
    }

    /// TSVT that also returns the nuclear norm of the result (the sum of the
    /// shrunken singular values over all slices).
    pub fn tsvt_with_nuclear(&self, tau: T) -> Result<(TMatrix<T>, T)> {
        if tau.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidParameter(format!(
                "threshold must be positive, got {}",
                tau.as_f64()
            )));
        }
        let slices = self.spectral_slices();
        let out = map_slices(self.slice_count(), self.scalar_shape(), self.is_real(), |k, real| {
            let svd = slice_svd(slices.slice(k), real, true, k)?;
            let shrunk: Vec<T> = svd.s.iter().map(|&s| rmax(s - tau, T::zero())).collect();
            let nuclear = shrunk.iter().fold(T::zero(), |a, &b| a + b);
            Ok(Thresholded {
                slice: recompose(&svd, &shrunk),
                nuclear,
            })
        })?;
        let nuclear = out.iter().fold(T::zero(), |a, t| a + t.nuclear);
        let mats = out.into_iter().map(|t| t.slice).collect();
        let (rows, cols) = self.dims();
        let slices = SpectralSlices::new(self.scalar_shape().to_vec(), rows, cols, mats)?;
        Ok((TMatrix::from_spectral_slices(&slices, self.is_real())?, nuclear))
    }

    /// Slice-wise Moore–Penrose pseudo-inverse, `V ∘ S† ∘ U*`. Singular values
    /// at or below the automatic rank tolerance are treated as zero.
    pub fn pseudo_inverse(&self) -> Result<TMatrix<T>> {
        let slices = self.spectral_slices();
        let svds = slice_svds(self, &slices, true)?;
        let tol = super::rank::auto_tolerance(self, &svds.iter().map(|s| s.s.clone()).collect::<Vec<_>>());
        let shape = self.scalar_shape().to_vec();
        let mats: Vec<_> = svds
            .iter()
            .map(|svd| {
                let mut out = DMatrix::from_element(svd.v.nrows(), svd.u.nrows(), czero());
                for (d, &s) in svd.s.iter().enumerate() {
                    if s > tol {
                        out += (svd.v.column(d) * creal(T::one() / s)) * svd.u.column(d).adjoint();
                    }
                }
                out
            })
            .collect();
        let (rows, cols) = self.dims();
        TMatrix::from_spectral_slices(&SpectralSlices::new(shape, cols, rows, mats)?, self.is_real())
    }
}
