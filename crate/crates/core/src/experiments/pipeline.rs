//! End-to-end image completion: lift, complete, down-convert.

use serde::{Deserialize, Serialize};

use super::rng::{sample_positions, stream};
use crate::completion::{tmatrix_admm_observed, CompletionConfig, CompletionTrace, Iterate, ObservationMask};
use crate::error::{Error, Result};
use crate::lifting::{downconvert, lift_image, lift_mask, BoundaryPolicy, Neighborhood, SpectralImage, ValueDomain};
use crate::scalar::Real;
use crate::tmatrix::TMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageCompletionSpec {
    pub neighborhood: Neighborhood,
    pub boundary: BoundaryPolicy,
    pub domain: ValueDomain,
    pub config: CompletionConfig,
}

impl Default for ImageCompletionSpec {
    fn default() -> Self {
        Self {
            neighborhood: Neighborhood::new(3, 3).expect("odd"),
            boundary: BoundaryPolicy::default(),
            domain: ValueDomain::default(),
            config: CompletionConfig::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ImageCompletion<T> {
    pub recovered: SpectralImage<T>,
    pub trace: CompletionTrace,
}

/// Hides `round(missing · H·W·C)` samples of an `H x W x C` image, chosen
/// uniformly without replacement over the flattened sample domain.
pub fn random_pixel_mask(shape: [usize; 3], missing: f64, seed: u64) -> Result<ObservationMask> {
    if !(0.0..1.0).contains(&missing) {
        return Err(Error::InvalidParameter(format!(
            "missing fraction must lie in [0, 1), got {missing}"
        )));
    }
    let n = shape.iter().product();
    let hidden = sample_positions(&mut stream(seed, &[u64::from_le_bytes(*b"pixmask\0")]), n, missing);
    ObservationMask::with_missing(shape.to_vec(), hidden)
}

/// Lifts the image, lifts the mask, runs the generalized ADMM and
/// down-converts the central neighborhood position. With nothing missing
/// the (re-quantized) input is returned without iterating.
pub fn complete_image<T: Real>(
    img: &SpectralImage<T>,
    pixels: &ObservationMask,
    spec: &ImageCompletionSpec,
) -> Result<ImageCompletion<T>> {
    complete_image_observed(img, pixels, spec, |_| {})
}

/// [`complete_image`] with a callback after every ADMM iteration.
pub fn complete_image_observed<T: Real>(
    img: &SpectralImage<T>,
    pixels: &ObservationMask,
    spec: &ImageCompletionSpec,
    observe: impl FnMut(&Iterate<TMatrix<T>>),
) -> Result<ImageCompletion<T>> {
    if pixels.shape() != img.shape() {
        return Err(Error::ShapeMismatch {
            left: pixels.shape().to_vec(),
            right: img.shape().to_vec(),
        });
    }
    spec.config.validate()?;
    if pixels.missing_count() == 0 {
        return Ok(ImageCompletion {
            recovered: img.quantize(spec.domain),
            trace: CompletionTrace {
                records: Vec::new(),
                converged: true,
            },
        });
    }
    let lifted = lift_image(img, spec.neighborhood, spec.boundary)?;
    let theta = lift_mask(pixels, spec.neighborhood, spec.boundary)?;
    let out = tmatrix_admm_observed(&lifted.tmatrix, &theta, &spec.config, observe)?;
    Ok(ImageCompletion {
        recovered: downconvert(&out.x, spec.domain)?,
        trace: out.trace,
    })
}
