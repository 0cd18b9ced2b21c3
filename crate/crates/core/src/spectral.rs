//! Order-N complex arrays and the multi-mode DFT, axis permutation and
//! reshape primitives the algebra is built on.
//!
//! Storage is row-major: the last index varies fastest. The forward DFT is
//! unnormalized and the inverse carries the full `1/K` factor, so circular
//! convolution maps to a plain Hadamard product of spectra.

use num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::scalar::{cabs, czero, Real};

/// Dense complex array of arbitrary order in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexArrayN<T> {
    shape: Vec<usize>,
    data: Vec<Complex<T>>,
}

pub(crate) fn check_shape(shape: &[usize]) -> Result<usize> {
    if shape.is_empty() || shape.contains(&0) {
        return Err(Error::InvalidShape(shape.to_vec()));
    }
    Ok(shape.iter().product())
}

/// Row-major strides for `shape`.
pub fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

impl<T: Real> ComplexArrayN<T> {
    pub fn new(shape: Vec<usize>, data: Vec<Complex<T>>) -> Result<Self> {
        let len = check_shape(&shape)?;
        if data.len() != len {
            return Err(Error::DataLength { shape, len: data.len() });
        }
        Ok(Self { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Result<Self> {
        let len = check_shape(&shape)?;
        Ok(Self {
            shape,
            data: vec![czero(); len],
        })
    }

    pub fn from_real(shape: Vec<usize>, values: &[T]) -> Result<Self> {
        let data = values.iter().map(|&v| Complex::new(v, T::zero())).collect();
        Self::new(shape, data)
    }

    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> Complex<T>) -> Result<Self> {
        let len = check_shape(&shape)?;
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0; shape.len()];
        for _ in 0..len {
            data.push(f(&idx));
            increment(&mut idx, &shape);
        }
        Ok(Self { shape, data })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn linear_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.shape.len());
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn multi_index(&self, mut linear: usize) -> Vec<usize> {
        let mut idx = vec![0; self.shape.len()];
        for (slot, &n) in idx.iter_mut().zip(&self.shape).rev() {
            *slot = linear % n;
            linear /= n;
        }
        idx
    }

    pub fn get(&self, index: &[usize]) -> Complex<T> {
        self.data[self.linear_index(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Complex<T>) {
        let i = self.linear_index(index);
        self.data[i] = value;
    }

    /// Reinterprets the storage with a new shape without moving data.
    pub fn reshape(self, shape: Vec<usize>) -> Result<Self> {
        let len = check_shape(&shape)?;
        if len != self.data.len() {
            return Err(Error::ReshapeMismatch {
                from: self.shape,
                from_len: self.data.len(),
                to: shape,
                to_len: len,
            });
        }
        Ok(Self { shape, data: self.data })
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(Self {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape.clone(),
                right: other.shape.clone(),
            });
        }
        Ok(())
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &z| crate::scalar::rmax(acc, cabs(z)))
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == T::zero())
    }

    pub fn real_parts(&self) -> Vec<T> {
        self.data.iter().map(|z| z.re).collect()
    }

    pub fn max_imag(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| crate::scalar::rmax(acc, crate::scalar::rabs(z.im)))
    }

    /// Drops imaginary round-off after checking it is below `tol` relative to
    /// the array's magnitude.
    pub fn truncate_imag(&mut self, tol: T) -> Result<()> {
        let scale = crate::scalar::rmax(self.max_abs(), T::one());
        let residue = self.max_imag();
        if residue > tol * scale {
            return Err(Error::ImaginaryResidue {
                residue: residue.as_f64(),
                tol: (tol * scale).as_f64(),
            });
        }
        for z in &mut self.data {
            z.im = T::zero();
        }
        Ok(())
    }
}

/// Advances a row-major odometer; returns false after wrapping around.
pub(crate) fn increment(idx: &mut [usize], shape: &[usize]) -> bool {
    for axis in (0..shape.len()).rev() {
        idx[axis] += 1;
        if idx[axis] < shape[axis] {
            return true;
        }
        idx[axis] = 0;
    }
    false
}

fn validate_modes(order: usize, modes: &[usize]) -> Result<()> {
    let mut seen = vec![false; order];
    for &m in modes {
        if m >= order {
            return Err(Error::InvalidMode { mode: m, order });
        }
        if seen[m] {
            return Err(Error::DuplicateMode(m));
        }
        seen[m] = true;
    }
    Ok(())
}

fn transform<T: Real>(x: &ComplexArrayN<T>, modes: &[usize], direction: FftDirection) -> Result<ComplexArrayN<T>> {
    validate_modes(x.ndim(), modes)?;
    let mut data = x.data.clone();
    let mut planner = FftPlanner::<T>::new();
    let mut lines: Vec<Complex<T>> = Vec::new();
    for &mode in modes {
        let n = x.shape[mode];
        if n == 1 {
            continue;
        }
        let fft = planner.plan_fft(n, direction);
        let mut scratch = vec![czero(); fft.get_inplace_scratch_len()];
        let stride: usize = x.shape[mode + 1..].iter().product();
        if stride == 1 {
            fft.process_with_scratch(&mut data, &mut scratch);
            continue;
        }
        // Gather every line along `mode` into a contiguous buffer, transform
        // the whole batch, then scatter back.
        let block = n * stride;
        lines.clear();
        lines.reserve(data.len());
        for chunk in data.chunks_exact(block) {
            for inner in 0..stride {
                lines.extend((0..n).map(|j| chunk[j * stride + inner]));
            }
        }
        fft.process_with_scratch(&mut lines, &mut scratch);
        let mut src = lines.iter();
        for chunk in data.chunks_exact_mut(block) {
            for inner in 0..stride {
                for j in 0..n {
                    chunk[j * stride + inner] = *src.next().unwrap();
                }
            }
        }
    }
    Ok(ComplexArrayN {
        shape: x.shape.clone(),
        data,
    })
}

/// Unnormalized DFT along each listed mode.
pub fn forward_dft<T: Real>(x: &ComplexArrayN<T>, modes: &[usize]) -> Result<ComplexArrayN<T>> {
    transform(x, modes, FftDirection::Forward)
}

/// Inverse DFT along each listed mode, including the `1/K` normalization
/// where `K` is the product of the transformed extents.
pub fn inverse_dft<T: Real>(x: &ComplexArrayN<T>, modes: &[usize]) -> Result<ComplexArrayN<T>> {
    let mut out = transform(x, modes, FftDirection::Inverse)?;
    let k: usize = modes.iter().map(|&m| x.shape[m]).product();
    if k > 1 {
        let scale = T::one() / T::lit(k as f64);
        for z in &mut out.data {
            *z = z.scale(scale);
        }
    }
    Ok(out)
}

/// Reorders axes so that output axis `j` is input axis `perm[j]`.
pub fn permute_axes<T: Real>(x: &ComplexArrayN<T>, perm: &[usize]) -> Result<ComplexArrayN<T>> {
    let order = x.ndim();
    let mut seen = vec![false; order];
    let valid = perm.len() == order
        && perm
            .iter()
            .all(|&p| p < order && !std::mem::replace(&mut seen[p], true));
    if !valid {
        return Err(Error::InvalidPermutation {
            perm: perm.to_vec(),
            order,
        });
    }
    let in_strides = strides(&x.shape);
    let out_shape: Vec<usize> = perm.iter().map(|&p| x.shape[p]).collect();
    let src_strides: Vec<usize> = perm.iter().map(|&p| in_strides[p]).collect();
    let mut data = Vec::with_capacity(x.len());
    let mut idx = vec![0; order];
    let mut offset = 0usize;
    for _ in 0..x.len() {
        data.push(x.data[offset]);
        // Odometer step with incremental source offset.
        for axis in (0..order).rev() {
            idx[axis] += 1;
            offset += src_strides[axis];
            if idx[axis] < out_shape[axis] {
                break;
            }
            offset -= src_strides[axis] * out_shape[axis];
            idx[axis] = 0;
        }
    }
    Ok(ComplexArrayN { shape: out_shape, data })
}

fn reversed_axes(order: usize) -> Vec<usize> {
    (0..order).rev().collect()
}

/// Reshape under the row-index-first (column-major, first index fastest)
/// linearization, independent of the row-major storage order.
pub fn reshape_row_index_first<T: Real>(x: &ComplexArrayN<T>, new_shape: &[usize]) -> Result<ComplexArrayN<T>> {
    let len = check_shape(new_shape)?;
    if len != x.len() {
        return Err(Error::ReshapeMismatch {
            from: x.shape.clone(),
            from_len: x.len(),
            to: new_shape.to_vec(),
            to_len: len,
        });
    }
    // Reversing the axes of a row-major array yields its column-major order.
    let column_major = permute_axes(x, &reversed_axes(x.ndim()))?;
    let rev_shape: Vec<usize> = new_shape.iter().rev().copied().collect();
    let staged = column_major.reshape(rev_shape)?;
    permute_axes(&staged, &reversed_axes(new_shape.len()))
}
