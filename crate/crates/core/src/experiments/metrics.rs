use crate::error::{Error, Result};
use crate::lifting::{SpectralImage, ValueDomain};
use crate::scalar::Real;
use crate::spectral::ComplexArrayN;

/// Relative error `||truth − estimate||_F / ||truth||_F`.
pub fn rse<T: Real>(truth: &ComplexArrayN<T>, estimate: &ComplexArrayN<T>) -> Result<f64> {
    let diff = truth.zip_with(estimate, |a, b| a - b)?;
    let reference = truth.frobenius_norm().as_f64();
    if reference == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(diff.frobenius_norm().as_f64() / reference)
}

/// PSNR in dB with unit peak: both images are normalized to `[0, 1]` (8-bit
/// samples are divided by 255) and
/// `PSNR = 10 · log10(D1·D2·D3 / ||recovered − reference||_F²)`.
/// Identical images give `f64::INFINITY`.
pub fn psnr<T: Real>(recovered: &SpectralImage<T>, reference: &SpectralImage<T>, domain: ValueDomain) -> Result<f64> {
    if recovered.shape() != reference.shape() {
        return Err(Error::ShapeMismatch {
            left: recovered.shape().to_vec(),
            right: reference.shape().to_vec(),
        });
    }
    let scale = match domain {
        ValueDomain::Integer => 255.0,
        ValueDomain::Normalized => 1.0,
    };
    let sq: f64 = recovered
        .data()
        .iter()
        .zip(reference.data())
        .map(|(a, b)| ((a.as_f64() - b.as_f64()) / scale).powi(2))
        .sum();
    if sq == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (recovered.data().len() as f64 / sq).log10())
}
