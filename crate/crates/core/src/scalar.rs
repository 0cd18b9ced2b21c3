//! Floating-point scalar abstraction shared by every numerical module.

use nalgebra::RealField;
use num_complex::Complex;
use rustfft::FftNum;

/// Real component type of the complex algebra: `f32` or `f64`.
///
/// Everything numerical in the crate is generic over this trait; the concrete
/// aliases at the crate root pick `f64`, which is what the solver is tuned for.
pub trait Real: RealField + FftNum + Copy + Default {
    /// Converts an `f64` literal into this type.
    fn lit(v: f64) -> Self {
        nalgebra::convert(v)
    }

    /// Widens (or keeps) this value as an `f64`.
    fn as_f64(self) -> f64;

    /// Tolerance for truncating imaginary round-off of real-bodied results.
    fn imag_residue_tol() -> Self {
        let eps = Self::default_epsilon() * Self::lit(100.0);
        RealField::max(Self::lit(1e-9), eps)
    }
}

impl Real for f32 {
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    fn as_f64(self) -> f64 {
        self
    }
}

pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

pub(crate) fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

pub(crate) fn creal<T: Real>(v: T) -> Complex<T> {
    Complex::new(v, T::zero())
}

/// Magnitude of a complex number, avoiding the `abs` name clash between
/// `Signed` and `ComplexField`.
pub(crate) fn cabs<T: Real>(z: Complex<T>) -> T {
    z.re.hypot(z.im)
}

pub(crate) fn rabs<T: Real>(v: T) -> T {
    <T as nalgebra::ComplexField>::abs(v)
}

pub(crate) fn rmax<T: Real>(a: T, b: T) -> T {
    RealField::max(a, b)
}
