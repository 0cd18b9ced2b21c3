//! Generalized matrices: rectangular arrays of t-scalars.
//!
//! A `D1 x D2` t-matrix over t-scalars of shape `I1 x … x IN` is stored
//! little-endian, as one order-`(N+2)` complex array of shape
//! `I1 x … x IN x D1 x D2`. With row-major storage each spectral slice is a
//! contiguous `D1 x D2` block, so every slice-wise operation (products,
//! TSVD, TSVT, pseudo-inverse, ranks, norms) is a DFT over the scalar axes,
//! an independent loop over `K` ordinary complex matrices, and an inverse DFT.
//!
//! For real-bodied inputs only one slice of each conjugate pair
//! `(k, -k mod I)` is computed; its partner is filled in by conjugation and
//! the result is truncated back to a real body.

mod decomp;
mod dump;
mod norms;
mod rank;

pub use decomp::TsvdFactors;
pub use dump::write_tsvd_csv;
pub use norms::MAX_REPRESENTATION_DIM;
pub use rank::{HigherOrderRank, RankTolerance};

use nalgebra::DMatrix;
use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{cone, Real};
use crate::spectral::{forward_dft, inverse_dft, permute_axes, ComplexArrayN};
use crate::tscalar::{algebra_dim, require_same_scalar_shape, TScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TMatrix<T> {
    body: ComplexArrayN<T>,
    scalar_order: usize,
}

/// The `K` conventional complex matrices obtained by transforming a t-matrix
/// over its scalar axes, indexed by linearized (row-major) multi-index.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSlices<T: nalgebra::Scalar> {
    scalar_shape: Vec<usize>,
    rows: usize,
    cols: usize,
    slices: Vec<DMatrix<Complex<T>>>,
}

impl<T: Real> SpectralSlices<T> {
    pub fn new(scalar_shape: Vec<usize>, rows: usize, cols: usize, slices: Vec<DMatrix<Complex<T>>>) -> Result<Self> {
        let k = algebra_dim(&scalar_shape)?;
        if slices.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "{} slices supplied for {k} spectral indices",
                slices.len()
            )));
        }
        if let Some(bad) = slices.iter().position(|m| m.shape() != (rows, cols)) {
            return Err(Error::DimensionMismatch(format!(
                "slice {bad} has shape {:?}, expected ({rows}, {cols})",
                slices[bad].shape()
            )));
        }
        Ok(Self {
            scalar_shape,
            rows,
            cols,
            slices,
        })
    }

    pub fn scalar_shape(&self) -> &[usize] {
        &self.scalar_shape
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn slice(&self, k: usize) -> &DMatrix<Complex<T>> {
        &self.slices[k]
    }

    /// Slice at a scalar multi-index.
    pub fn get(&self, index: &[usize]) -> &DMatrix<Complex<T>> {
        let k = index
            .iter()
            .zip(&self.scalar_shape)
            .fold(0, |acc, (&i, &n)| acc * n + i);
        &self.slices[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &DMatrix<Complex<T>>> {
        self.slices.iter()
    }

    pub fn into_vec(self) -> Vec<DMatrix<Complex<T>>> {
        self.slices
    }
}

/// Linear index of the conjugate partner `(-i1 mod I1, …, -iN mod IN)`.
pub(crate) fn partner_index(shape: &[usize], k: usize) -> usize {
    let mut rest = k;
    let mut digits = vec![0; shape.len()];
    for (d, &n) in digits.iter_mut().zip(shape).rev() {
        *d = rest % n;
        rest /= n;
    }
    digits.iter().zip(shape).fold(0, |acc, (&i, &n)| acc * n + (n - i) % n)
}

/// Per-slice values that know how to become their conjugate partner.
pub(crate) trait Conjugate {
    fn conjugate(&self) -> Self;
}

impl<T: Real> Conjugate for DMatrix<Complex<T>> {
    fn conjugate(&self) -> Self {
        self.map(|z| z.conj())
    }
}

/// Evaluates `f` on every spectral index. With `real_input`, only one slice of
/// each conjugate pair is evaluated and self-conjugate slices are flagged so
/// `f` may use real arithmetic.
pub(crate) fn map_slices<R, F>(k: usize, shape: &[usize], real_input: bool, f: F) -> Result<Vec<R>>
where
    R: Conjugate + Send,
    F: Fn(usize, bool) -> Result<R> + Sync,
{
    if !real_input {
        return (0..k).into_par_iter().map(|i| f(i, false)).collect();
    }
    let reps: Vec<usize> = (0..k).filter(|&i| partner_index(shape, i) >= i).collect();
    let computed: Vec<R> = reps
        .par_iter()
        .map(|&i| f(i, partner_index(shape, i) == i))
        .collect::<Result<_>>()?;
    let mut out: Vec<Option<R>> = (0..k).map(|_| None).collect();
    for (i, r) in reps.into_iter().zip(computed) {
        let p = partner_index(shape, i);
        if p != i {
            out[p] = Some(r.conjugate());
        }
        out[i] = Some(r);
    }
    Ok(out.into_iter().map(|r| r.expect("every index covered")).collect())
}

impl<T: Real> TMatrix<T> {
    /// Wraps a little-endian body whose first `scalar_order` axes are the
    /// t-scalar axes and whose last two axes are the matrix axes.
    pub fn new(body: ComplexArrayN<T>, scalar_order: usize) -> Result<Self> {
        if body.ndim() != scalar_order + 2 || scalar_order == 0 {
            return Err(Error::DimensionMismatch(format!(
                "body of order {} cannot hold a t-matrix over order-{scalar_order} t-scalars",
                body.ndim()
            )));
        }
        Ok(Self { body, scalar_order })
    }

    pub fn zeros(scalar_shape: &[usize], rows: usize, cols: usize) -> Result<Self> {
        let mut shape = scalar_shape.to_vec();
        shape.extend([rows, cols]);
        Self::new(ComplexArrayN::zeros(shape)?, scalar_shape.len())
    }

    pub fn from_real(scalar_shape: &[usize], rows: usize, cols: usize, values: &[T]) -> Result<Self> {
        let mut shape = scalar_shape.to_vec();
        shape.extend([rows, cols]);
        Self::new(ComplexArrayN::from_real(shape, values)?, scalar_shape.len())
    }

    /// Identity t-matrix: `ė` on the diagonal, `ż` elsewhere.
    pub fn identity(scalar_shape: &[usize], dim: usize) -> Result<Self> {
        let mut out = Self::zeros(scalar_shape, dim, dim)?;
        for d in 0..dim {
            let i = d * dim + d;
            out.body.data_mut()[i] = cone();
        }
        Ok(out)
    }

    /// Builds a t-matrix from row-major t-scalar entries.
    pub fn from_entries(rows: usize, cols: usize, entries: &[TScalar<T>]) -> Result<Self> {
        if entries.len() != rows * cols || entries.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} t-matrix",
                entries.len()
            )));
        }
        let scalar_shape = entries[0].shape().to_vec();
        let mut out = Self::zeros(&scalar_shape, rows, cols)?;
        let block = rows * cols;
        for (e, entry) in entries.iter().enumerate() {
            require_same_scalar_shape(&scalar_shape, entry.shape())?;
            for (k, &z) in entry.body().data().iter().enumerate() {
                out.body.data_mut()[k * block + e] = z;
            }
        }
        Ok(out)
    }

    pub fn body(&self) -> &ComplexArrayN<T> {
        &self.body
    }

    pub fn body_mut(&mut self) -> &mut ComplexArrayN<T> {
        &mut self.body
    }

    pub fn into_body(self) -> ComplexArrayN<T> {
        self.body
    }

    pub fn scalar_shape(&self) -> &[usize] {
        &self.body.shape()[..self.scalar_order]
    }

    pub fn scalar_order(&self) -> usize {
        self.scalar_order
    }

    pub fn rows(&self) -> usize {
        self.body.shape()[self.scalar_order]
    }

    pub fn cols(&self) -> usize {
        self.body.shape()[self.scalar_order + 1]
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows(), self.cols())
    }

    /// Algebra dimension `K`, also the number of spectral slices.
    pub fn slice_count(&self) -> usize {
        self.scalar_shape().iter().product()
    }

    pub fn is_real(&self) -> bool {
        self.body.is_real()
    }

    pub fn entry(&self, row: usize, col: usize) -> TScalar<T> {
        let block = self.rows() * self.cols();
        let off = row * self.cols() + col;
        let data = (0..self.slice_count())
            .map(|k| self.body.data()[k * block + off])
            .collect();
        TScalar::new(ComplexArrayN::new(self.scalar_shape().to_vec(), data).expect("shape is valid"))
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: &TScalar<T>) -> Result<()> {
        require_same_scalar_shape(self.scalar_shape(), value.shape())?;
        let block = self.rows() * self.cols();
        let off = row * self.cols() + col;
        for (k, &z) in value.body().data().iter().enumerate() {
            self.body.data_mut()[k * block + off] = z;
        }
        Ok(())
    }

    fn scalar_modes(&self) -> Vec<usize> {
        (0..self.scalar_order).collect()
    }

    pub fn spectral_slices(&self) -> SpectralSlices<T> {
        let transformed = forward_dft(&self.body, &self.scalar_modes()).expect("scalar modes are valid");
        let (rows, cols) = self.dims();
        let slices = transformed
            .data()
            .chunks_exact(rows * cols)
            .map(|block| DMatrix::from_row_slice(rows, cols, block))
            .collect();
        SpectralSlices {
            scalar_shape: self.scalar_shape().to_vec(),
            rows,
            cols,
            slices,
        }
    }

    /// Inverse of [`TMatrix::spectral_slices`]. With `real_body`, imaginary
    /// round-off is verified to be small and dropped.
    pub fn from_spectral_slices(slices: &SpectralSlices<T>, real_body: bool) -> Result<Self> {
        let (rows, cols) = slices.dims();
        let mut data = Vec::with_capacity(slices.len() * rows * cols);
        for m in slices.iter() {
            for i in 0..rows {
                for j in 0..cols {
                    data.push(m[(i, j)]);
                }
            }
        }
        let mut shape = slices.scalar_shape.clone();
        shape.extend([rows, cols]);
        let order = slices.scalar_shape.len();
        let modes: Vec<usize> = (0..order).collect();
        let mut body = inverse_dft(&ComplexArrayN::new(shape, data)?, &modes)?;
        if real_body {
            body.truncate_imag(T::imag_residue_tol())?;
        }
        Self::new(body, order)
    }

    fn require_same_layout(&self, other: &Self) -> Result<()> {
        require_same_scalar_shape(self.scalar_shape(), other.scalar_shape())?;
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_layout(other)?;
        Self::new(self.body.zip_with(&other.body, |a, b| a + b)?, self.scalar_order)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_layout(other)?;
        Self::new(self.body.zip_with(&other.body, |a, b| a - b)?, self.scalar_order)
    }

    pub fn scale(&self, lambda: Complex<T>) -> Self {
        Self {
            body: self.body.map(|z| z * lambda),
            scalar_order: self.scalar_order,
        }
    }

    /// Frobenius norm of the underlying array, `||tensor(X)||_F`.
    pub fn frobenius_norm(&self) -> T {
        self.body.frobenius_norm()
    }

    /// T-matrix product, computed slice by slice in the Fourier domain.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        require_same_scalar_shape(self.scalar_shape(), other.scalar_shape())?;
        if self.cols() != other.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {:?} by {:?}",
                self.dims(),
                other.dims()
            )));
        }
        let a = self.spectral_slices();
        let b = other.spectral_slices();
        let real = self.is_real() && other.is_real();
        let shape = self.scalar_shape().to_vec();
        let prods = map_slices(a.len(), &shape, real, |k, _| Ok(a.slice(k) * b.slice(k)))?;
        let slices = SpectralSlices::new(shape, self.rows(), other.cols(), prods)?;
        Self::from_spectral_slices(&slices, real)
    }

    /// Conjugate transpose. Each spectral slice of the result is the
    /// conjugate transpose of the corresponding input slice; in the spatial
    /// domain that is `Y[i, c, r] = conj(X[-i mod I, r, c])`.
    pub fn conj_transpose(&self) -> Self {
        let (rows, cols) = self.dims();
        let shape = self.scalar_shape().to_vec();
        let k = self.slice_count();
        let block = rows * cols;
        let src = self.body.data();
        let mut data = Vec::with_capacity(src.len());
        for i in 0..k {
            let p = partner_index(&shape, i);
            for c in 0..cols {
                for r in 0..rows {
                    data.push(src[p * block + r * cols + c].conj());
                }
            }
        }
        let mut out_shape = shape;
        out_shape.extend([cols, rows]);
        Self {
            body: ComplexArrayN::new(out_shape, data).expect("shape is valid"),
            scalar_order: self.scalar_order,
        }
    }

    /// Big-endian layout `D1 x D2 x I1 x … x IN`.
    pub fn to_big_endian(&self) -> ComplexArrayN<T> {
        let n = self.scalar_order;
        let perm: Vec<usize> = [n, n + 1].into_iter().chain(0..n).collect();
        permute_axes(&self.body, &perm).expect("valid permutation")
    }

    pub fn from_big_endian(array: &ComplexArrayN<T>) -> Result<Self> {
        if array.ndim() < 3 {
            return Err(Error::DimensionMismatch(
                "a big-endian t-matrix needs at least three axes".into(),
            ));
        }
        let n = array.ndim() - 2;
        let perm: Vec<usize> = (2..n + 2).chain([0, 1]).collect();
        Self::new(permute_axes(array, &perm)?, n)
    }
}
