//! Pixel-neighborhood lifting of multispectral images into t-matrices and
//! central-row down-conversion back.
//!
//! An `D1 x D2 x D3` image and an odd `I1 x I2` neighborhood give a t-matrix
//! of dims `D1 x D2` over t-scalars of shape `I1 x I2 x D3`. The t-scalar at
//! pixel `(d1, d2)` holds the neighborhood of that pixel across all channels:
//!
//! ```text
//! body[a, b, c, d1, d2] = img[d1 + a - (I1-1)/2, d2 + b - (I2-1)/2, c]
//! ```
//!
//! with out-of-range rows/columns resolved by a [`BoundaryPolicy`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::completion::ObservationMask;
use crate::error::{Error, Result};
use crate::scalar::{creal, Real};
use crate::spectral::{permute_axes, reshape_row_index_first, ComplexArrayN};
use crate::tmatrix::TMatrix;

/// Handling of neighborhoods that extend past the image border.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryPolicy {
    /// Clamp to the nearest edge pixel.
    #[default]
    Replicate,
    /// Periodic continuation.
    Wrap,
    /// Mirror about the edge pixel without repeating it (`-1 → 1`).
    Reflect,
}

impl BoundaryPolicy {
    /// Maps a possibly out-of-range coordinate into `0..n`.
    pub fn resolve(self, i: i64, n: usize) -> usize {
        let n = n as i64;
        let r = match self {
            BoundaryPolicy::Replicate => i.clamp(0, n - 1),
            BoundaryPolicy::Wrap => i.rem_euclid(n),
            BoundaryPolicy::Reflect => {
                if n == 1 {
                    0
                } else {
                    let period = 2 * (n - 1);
                    let m = i.rem_euclid(period);
                    if m < n {
                        m
                    } else {
                        period - m
                    }
                }
            }
        };
        r as usize
    }
}

impl FromStr for BoundaryPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "replicate" => Ok(Self::Replicate),
            "wrap" => Ok(Self::Wrap),
            "reflect" => Ok(Self::Reflect),
            other => Err(Error::InvalidParameter(format!(
                "unknown boundary policy '{other}' (expected replicate, wrap or reflect)"
            ))),
        }
    }
}

impl fmt::Display for BoundaryPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Replicate => "replicate",
            Self::Wrap => "wrap",
            Self::Reflect => "reflect",
        })
    }
}

/// Odd-sized pixel neighborhood `rows x cols`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Neighborhood {
    rows: usize,
    cols: usize,
}

impl Neighborhood {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidNeighborhood {
                rows,
                cols,
                reason: "extents must be positive",
            });
        }
        if rows.is_multiple_of(2) || cols.is_multiple_of(2) {
            return Err(Error::InvalidNeighborhood {
                rows,
                cols,
                reason: "extents must be odd",
            });
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn center(&self) -> (usize, usize) {
        ((self.rows - 1) / 2, (self.cols - 1) / 2)
    }

    fn check_fits(&self, height: usize, width: usize) -> Result<()> {
        if self.rows > height || self.cols > width {
            return Err(Error::InvalidNeighborhood {
                rows: self.rows,
                cols: self.cols,
                reason: "neighborhood exceeds the image",
            });
        }
        Ok(())
    }
}

impl FromStr for Neighborhood {
    type Err = Error;

    /// Parses `"3x3"`, `"5X3"` or a single odd number.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse neighborhood '{s}', expected e.g. 3x3"));
        let mut parts = s.trim().split(['x', 'X']);
        let rows = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let cols = match parts.next() {
            Some(c) => c.trim().parse().map_err(|_| bad())?,
            None => rows,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Self::new(rows, cols)
    }
}

impl TryFrom<String> for Neighborhood {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Neighborhood> for String {
    fn from(n: Neighborhood) -> String {
        n.to_string()
    }
}

impl fmt::Display for Neighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Value range of image samples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueDomain {
    /// 8-bit samples in `[0, 255]`; output is rounded half away from zero and clamped.
    #[default]
    Integer,
    /// Reals, nominally in `[0, 1]`; output is left untouched.
    Normalized,
}

/// `height x width x channels` real image, row-major with channels fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralImage<T> {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<T>,
}

impl<T: Real> SpectralImage<T> {
    pub fn new(height: usize, width: usize, channels: usize, data: Vec<T>) -> Result<Self> {
        let shape = vec![height, width, channels];
        let len = crate::spectral::check_shape(&shape)?;
        if data.len() != len {
            return Err(Error::DataLength { shape, len: data.len() });
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
        })
    }

    pub fn from_fn(
        height: usize,
        width: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> T,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(height * width * channels);
        for r in 0..height {
            for c in 0..width {
                for ch in 0..channels {
                    data.push(f(r, c, ch));
                }
            }
        }
        Self::new(height, width, channels, data)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// `[height, width, channels]`.
    pub fn shape(&self) -> [usize; 3] {
        [self.height, self.width, self.channels]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn index(&self, row: usize, col: usize, channel: usize) -> usize {
        (row * self.width + col) * self.channels + channel
    }

    pub fn get(&self, row: usize, col: usize, channel: usize) -> T {
        self.data[self.index(row, col, channel)]
    }

    pub fn set(&mut self, row: usize, col: usize, channel: usize, value: T) {
        let i = self.index(row, col, channel);
        self.data[i] = value;
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            data: self.data.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    /// Re-quantizes to the value domain.
    pub fn quantize(&self, domain: ValueDomain) -> Self {
        match domain {
            ValueDomain::Integer => self.map(|v| {
                let r = v.as_f64().round().clamp(0.0, 255.0);
                T::lit(r)
            }),
            ValueDomain::Normalized => self.clone(),
        }
    }
}

/// A lifted image together with how it was lifted.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedTMatrix<T> {
    pub tmatrix: TMatrix<T>,
    pub neighborhood: Neighborhood,
    pub boundary: BoundaryPolicy,
}

/// Lifts `img` with the given neighborhood. Channels are first lifted into
/// an `I1 x I2 x D1 x D2` array each, stacked along a fifth axis, and the
/// axes permuted to the little-endian `I1 x I2 x D3 x D1 x D2` layout.
pub fn lift_image<T: Real>(
    img: &SpectralImage<T>,
    nb: Neighborhood,
    boundary: BoundaryPolicy,
) -> Result<LiftedTMatrix<T>> {
    nb.check_fits(img.height, img.width)?;
    let (c1, c2) = nb.center();
    let stacked_shape = vec![nb.rows, nb.cols, img.height, img.width, img.channels];
    let stacked = ComplexArrayN::from_fn(stacked_shape, |idx| {
        let (a, b, d1, d2, c) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        let r = boundary.resolve(d1 as i64 + a as i64 - c1 as i64, img.height);
        let s = boundary.resolve(d2 as i64 + b as i64 - c2 as i64, img.width);
        creal(img.get(r, s, c))
    })?;
    let body = permute_axes(&stacked, &[0, 1, 4, 2, 3])?;
    Ok(LiftedTMatrix {
        tmatrix: TMatrix::new(body, 3)?,
        neighborhood: nb,
        boundary,
    })
}

/// Extracts the central neighborhood position without re-quantization.
///
/// The body is reshaped (first index fastest) to `(I1·I2) x (D3·D1·D2)`, the
/// central row `(I1·I2 − 1)/2` taken, reshaped to `D3 x D1 x D2` the same
/// way and permuted to `D1 x D2 x D3`.
pub fn downconvert_raw<T: Real>(x: &TMatrix<T>) -> Result<SpectralImage<T>> {
    let shape = x.scalar_shape();
    if shape.len() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "a lifted image needs t-scalars of shape I1 x I2 x D3, got {shape:?}"
        )));
    }
    let nb = Neighborhood::new(shape[0], shape[1])?;
    let (d3, (d1, d2)) = (shape[2], x.dims());
    let rows = nb.rows * nb.cols;
    let cols = d3 * d1 * d2;
    let flat = reshape_row_index_first(x.body(), &[rows, cols])?;
    let center = (rows - 1) / 2;
    let row = ComplexArrayN::new(vec![cols], flat.data()[center * cols..(center + 1) * cols].to_vec())?;
    let cube = reshape_row_index_first(&row, &[d3, d1, d2])?;
    let img = permute_axes(&cube, &[1, 2, 0])?;
    SpectralImage::new(d1, d2, d3, img.data().iter().map(|z| z.re).collect())
}

/// Central-row extraction followed by re-quantization.
pub fn downconvert<T: Real>(x: &TMatrix<T>, domain: ValueDomain) -> Result<SpectralImage<T>> {
    Ok(downconvert_raw(x)?.quantize(domain))
}

/// Lifts a pixel mask over `[D1, D2, D3]` to the entry domain of the lifted
/// t-matrix: missing pixels are marked `-1` in a placeholder image, the
/// image is lifted, and every `-1` entry is missing.
pub fn lift_mask(pixels: &ObservationMask, nb: Neighborhood, boundary: BoundaryPolicy) -> Result<ObservationMask> {
    let [h, w, c]: [usize; 3] = pixels
        .shape()
        .try_into()
        .map_err(|_| Error::DimensionMismatch(format!("pixel mask must be D1 x D2 x D3, got {:?}", pixels.shape())))?;
    if pixels.observed_count() == 0 {
        return Err(Error::DegenerateMask {
            observed: 0,
            total: pixels.len(),
        });
    }
    let marked = SpectralImage::new(
        h,
        w,
        c,
        pixels.flags().iter().map(|&o| if o { 0.0 } else { -1.0 }).collect(),
    )?;
    let lifted = lift_image::<f64>(&marked, nb, boundary)?;
    let body = lifted.tmatrix.body();
    ObservationMask::new(
        body.shape().to_vec(),
        body.data().iter().map(|z| z.re != -1.0).collect(),
    )
}
