//! Generalized scalars: the commutative algebra of order-N complex arrays
//! under entrywise addition and N-way circular convolution.
//!
//! A t-scalar is a normal operator whose eigenvalues are the entries of its
//! multi-mode DFT (its *spectrum*). Conjugation, nonnegativity, the partial
//! order, absolute value and trace are all defined spectrally, and products
//! are always computed as Hadamard products of spectra.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cabs, cone, creal, Real};
use crate::spectral::{check_shape, forward_dft, inverse_dft, ComplexArrayN};

#[derive(Clone, Debug, PartialEq)]
pub struct TScalar<T> {
    body: ComplexArrayN<T>,
}

/// The `K` eigenvalues of a t-scalar in canonical multi-index order.
#[derive(Clone, Debug, PartialEq)]
pub struct TScalarSpectrum<T> {
    entries: ComplexArrayN<T>,
}

/// Outcome of comparing two t-scalars under the spectral partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialOrdering {
    Equal,
    GreaterEqual,
    LessEqual,
    Incomparable,
}

fn all_modes(order: usize) -> Vec<usize> {
    (0..order).collect()
}

impl<T: Real> TScalarSpectrum<T> {
    pub fn new(entries: ComplexArrayN<T>) -> Self {
        Self { entries }
    }

    pub fn shape(&self) -> &[usize] {
        self.entries.shape()
    }

    pub fn entries(&self) -> &[Complex<T>] {
        self.entries.data()
    }

    pub fn as_array(&self) -> &ComplexArrayN<T> {
        &self.entries
    }

    /// Largest eigenvalue magnitude.
    pub fn max_abs(&self) -> T {
        self.entries.max_abs()
    }

    /// Entrywise nonnegativity test with absolute tolerance `tol`.
    pub fn is_nonnegative(&self, tol: T) -> bool {
        self.entries
            .data()
            .iter()
            .all(|z| crate::scalar::rabs(z.im) <= tol && z.re >= -tol)
    }
}

impl<T: Real> TScalar<T> {
    pub fn new(body: ComplexArrayN<T>) -> Self {
        Self { body }
    }

    pub fn from_real(shape: Vec<usize>, values: &[T]) -> Result<Self> {
        Ok(Self::new(ComplexArrayN::from_real(shape, values)?))
    }

    /// The multiplicative identity: one at the first multi-index, zero elsewhere.
    pub fn identity(shape: Vec<usize>) -> Result<Self> {
        let mut body = ComplexArrayN::zeros(shape)?;
        body.data_mut()[0] = cone();
        Ok(Self { body })
    }

    pub fn zero(shape: Vec<usize>) -> Result<Self> {
        Ok(Self {
            body: ComplexArrayN::zeros(shape)?,
        })
    }

    /// Builds the t-scalar whose eigenvalues are `spectrum`.
    ///
    /// With `real_body` set, the spectrum is expected to be conjugate
    /// symmetric: the imaginary residue of the inverse transform is checked
    /// against [`Real::imag_residue_tol`] and then dropped.
    pub fn from_spectrum(spectrum: &TScalarSpectrum<T>, real_body: bool) -> Result<Self> {
        let modes = all_modes(spectrum.entries.ndim());
        let mut body = inverse_dft(&spectrum.entries, &modes)?;
        if real_body {
            body.truncate_imag(T::imag_residue_tol())?;
        }
        Ok(Self { body })
    }

    pub fn body(&self) -> &ComplexArrayN<T> {
        &self.body
    }

    pub fn into_body(self) -> ComplexArrayN<T> {
        self.body
    }

    pub fn shape(&self) -> &[usize] {
        self.body.shape()
    }

    /// Algebra dimension `K`, the number of entries.
    pub fn dim(&self) -> usize {
        self.body.len()
    }

    pub fn is_real(&self) -> bool {
        self.body.is_real()
    }

    pub fn spectrum(&self) -> TScalarSpectrum<T> {
        let modes = all_modes(self.body.ndim());
        TScalarSpectrum {
            entries: forward_dft(&self.body, &modes).expect("all modes are valid"),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.body.zip_with(&other.body, |a, b| a + b)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.body.zip_with(&other.body, |a, b| a - b)?))
    }

    pub fn scalar_mul(&self, lambda: Complex<T>) -> Self {
        Self::new(self.body.map(|z| z * lambda))
    }

    /// Circular-convolution product, computed as a Hadamard product of spectra.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.body.require_same_shape(&other.body)?;
        let a = self.spectrum();
        let b = other.spectrum();
        let prod = a.entries.zip_with(&b.entries, |x, y| x * y)?;
        let real = self.is_real() && other.is_real();
        Self::from_spectrum(&TScalarSpectrum::new(prod), real)
    }

    /// The t-scalar whose eigenvalues are the complex conjugates of these.
    pub fn conjugate(&self) -> Self {
        let spec = self.spectrum();
        let conj = TScalarSpectrum::new(spec.entries.map(|z| z.conj()));
        Self::from_spectrum(&conj, self.is_real()).expect("conjugate of a real body is real")
    }

    /// Default nonnegativity tolerance: `1e-9` times the largest eigenvalue
    /// magnitude.
    pub fn default_tolerance(&self) -> T {
        self.spectrum().max_abs() * T::lit(1e-9)
    }

    pub fn is_nonnegative(&self, tol: T) -> bool {
        self.spectrum().is_nonnegative(tol)
    }

    pub fn partial_order_cmp(&self, other: &Self, tol: T) -> Result<PartialOrdering> {
        let ge = self.sub(other)?.is_nonnegative(tol);
        let le = other.sub(self)?.is_nonnegative(tol);
        Ok(match (ge, le) {
            (true, true) => PartialOrdering::Equal,
            (true, false) => PartialOrdering::GreaterEqual,
            (false, true) => PartialOrdering::LessEqual,
            (false, false) => PartialOrdering::Incomparable,
        })
    }

    /// Higher-order absolute value `sqrt(x* ∘ x)`: eigenvalue moduli.
    pub fn abs(&self) -> Self {
        let spec = self.spectrum();
        let moduli = TScalarSpectrum::new(spec.entries.map(|z| creal(cabs(z))));
        // A nonnegative real spectrum of a real body stays conjugate symmetric.
        Self::from_spectrum(&moduli, self.is_real()).expect("moduli of a real body are symmetric")
    }

    /// Sum of the eigenvalues.
    pub fn trace(&self) -> Complex<T> {
        self.spectrum()
            .entries()
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &z| acc + z)
    }

    /// Diagonal `K x K` matrix representation `diag(F_1(x), …, F_K(x))`.
    pub fn matrix_representation(&self) -> DMatrix<Complex<T>> {
        let spec = self.spectrum();
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(spec.entries()))
    }

    /// Trace norm `trace |x|`, the nuclear norm of the representation.
    pub fn trace_norm(&self) -> T {
        self.spectrum()
            .entries()
            .iter()
            .fold(T::zero(), |acc, &z| acc + cabs(z))
    }

    /// Schatten-2 norm of the matrix representation, equal to
    /// `sqrt(K) * ||body||_F`.
    pub fn schatten2(&self) -> T {
        self.spectrum().entries.frobenius_norm()
    }
}

/// Validates a t-scalar shape and returns its algebra dimension.
pub fn algebra_dim(shape: &[usize]) -> Result<usize> {
    check_shape(shape)
}

pub(crate) fn require_same_scalar_shape(a: &[usize], b: &[usize]) -> Result<()> {
    if a != b {
        return Err(Error::ShapeMismatch {
            left: a.to_vec(),
            right: b.to_vec(),
        });
    }
    Ok(())
}
