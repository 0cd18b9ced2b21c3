//! 8-bit image and mask I/O: PNG and binary PPM/PGM images, PNG bitmap and
//! CSV index-list masks.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder};

use crate::completion::ObservationMask;
use crate::error::{Error, Result};
use crate::lifting::SpectralImage;
use crate::scalar::Real;

fn image_err(path: &Path) -> impl FnOnce(image::ImageError) -> Error + '_ {
    move |source| Error::Image {
        path: path.to_path_buf(),
        source,
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Decodes an image into `[0, 255]` samples: grayscale files give one
/// channel, everything else three (alpha is dropped).
pub fn read_image<T: Real>(path: impl AsRef<Path>) -> Result<SpectralImage<T>> {
    let path = path.as_ref();
    let dynamic = image::open(path).map_err(image_err(path))?;
    let (w, h) = (dynamic.width() as usize, dynamic.height() as usize);
    let (channels, raw) = if dynamic.color().has_color() {
        (3, dynamic.to_rgb8().into_raw())
    } else {
        (1, dynamic.to_luma8().into_raw())
    };
    SpectralImage::new(h, w, channels, raw.into_iter().map(|v| T::lit(v as f64)).collect())
}

/// Samples rounded half away from zero and clamped to `[0, 255]`.
pub fn to_u8<T: Real>(img: &SpectralImage<T>) -> Vec<u8> {
    img.data()
        .iter()
        .map(|v| v.as_f64().round().clamp(0.0, 255.0) as u8)
        .collect()
}

enum Container {
    Png,
    Pnm,
}

fn container(path: &Path, channels: usize) -> Result<Container> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    match (ext.as_str(), channels) {
        ("png", _) => Ok(Container::Png),
        ("pnm", _) | ("ppm", 3) | ("pgm", 1) => Ok(Container::Pnm),
        ("ppm", _) | ("pgm", _) => Err(Error::Format(format!(
            "{}: a .{ext} file cannot hold {channels} channel(s)",
            path.display()
        ))),
        _ => Err(Error::Format(format!(
            "{}: unsupported image extension (use .png, .ppm, .pgm or .pnm)",
            path.display()
        ))),
    }
}

pub(crate) fn write_u8(path: &Path, bytes: &[u8], width: usize, height: usize, channels: usize) -> Result<()> {
    let color = match channels {
        1 => ExtendedColorType::L8,
        3 => ExtendedColorType::Rgb8,
        c => {
            return Err(Error::Format(format!(
                "{}: cannot encode {c}-channel images (only 1 or 3)",
                path.display()
            )))
        }
    };
    let kind = container(path, channels)?;
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    let (w, h) = (width as u32, height as u32);
    match kind {
        Container::Png => image::codecs::png::PngEncoder::new(&mut out)
            .write_image(bytes, w, h, color)
            .map_err(image_err(path))?,
        Container::Pnm => {
            let subtype = if channels == 1 {
                PnmSubtype::Graymap(SampleEncoding::Binary)
            } else {
                PnmSubtype::Pixmap(SampleEncoding::Binary)
            };
            PnmEncoder::new(&mut out)
                .with_subtype(subtype)
                .write_image(bytes, w, h, color)
                .map_err(image_err(path))?
        }
    }
    std::io::Write::flush(&mut out).map_err(io_err(path))
}

/// Writes an image as PNG or binary PPM/PGM, chosen by extension. Samples
/// are re-quantized to 8 bits.
pub fn write_image<T: Real>(path: impl AsRef<Path>, img: &SpectralImage<T>) -> Result<()> {
    write_u8(path.as_ref(), &to_u8(img), img.width(), img.height(), img.channels())
}

/// Reads a bitmap mask (0 = missing, 255 = observed) for an image of shape
/// `[height, width, channels]`. A grayscale bitmap applies to every channel;
/// an RGB bitmap gives per-channel masks.
pub fn read_mask_png(path: impl AsRef<Path>, shape: [usize; 3]) -> Result<ObservationMask> {
    let path = path.as_ref();
    let bitmap: SpectralImage<f64> = read_image(path)?;
    let [h, w, c] = shape;
    if bitmap.height() != h || bitmap.width() != w {
        return Err(Error::ShapeMismatch {
            left: vec![bitmap.height(), bitmap.width()],
            right: vec![h, w],
        });
    }
    if bitmap.channels() != 1 && bitmap.channels() != c {
        return Err(Error::Format(format!(
            "{}: a {}-channel mask cannot describe a {c}-channel image",
            path.display(),
            bitmap.channels()
        )));
    }
    let mut observed = Vec::with_capacity(h * w * c);
    for r in 0..h {
        for s in 0..w {
            for ch in 0..c {
                let v = bitmap.get(r, s, if bitmap.channels() == 1 { 0 } else { ch });
                observed.push(match v as u8 {
                    0 => false,
                    255 => true,
                    other => {
                        return Err(Error::Format(format!(
                            "{}: mask value {other} at pixel ({r}, {s}) is neither 0 nor 255",
                            path.display()
                        )))
                    }
                });
            }
        }
    }
    ObservationMask::new(shape.to_vec(), observed)
}

/// Writes a pixel mask `[height, width, channels]` as a bitmap. Masks that
/// agree across channels are written as grayscale.
pub fn write_mask_png(path: impl AsRef<Path>, mask: &ObservationMask) -> Result<()> {
    let path = path.as_ref();
    let [h, w, c]: [usize; 3] = mask
        .shape()
        .try_into()
        .map_err(|_| Error::DimensionMismatch(format!("pixel mask must be D1 x D2 x D3, got {:?}", mask.shape())))?;
    let flags = mask.flags();
    let uniform = flags.chunks_exact(c).all(|px| px.iter().all(|&f| f == px[0]));
    let to_byte = |f: &bool| if *f { 255u8 } else { 0 };
    if uniform {
        let bytes: Vec<u8> = flags.chunks_exact(c).map(|px| to_byte(&px[0])).collect();
        write_u8(path, &bytes, w, h, 1)
    } else {
        let bytes: Vec<u8> = flags.iter().map(to_byte).collect();
        write_u8(path, &bytes, w, h, c)
    }
}

/// Parses a CSV list of missing entries with header `row,col,channel`
/// (0-based). Without a `channel` column, every channel of the listed pixel
/// is missing. The first out-of-range index is reported with its 1-based
/// record number.
pub fn read_mask_csv(path: impl AsRef<Path>, shape: [usize; 3]) -> Result<ObservationMask> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_err(path))?;
    parse_mask_csv(file, shape, path.to_path_buf())
}

fn parse_mask_csv<R: std::io::Read>(input: R, shape: [usize; 3], path: PathBuf) -> Result<ObservationMask> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (Some(ri), Some(ci)) = (col("row"), col("col")) else {
        return Err(Error::Format(format!(
            "{}: mask CSV needs a header with row,col[,channel]",
            path.display()
        )));
    };
    let chi = col("channel");
    let [h, w, c] = shape;
    let mut missing = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let record = record?;
        let field = |i: usize| -> Result<i64> {
            record.get(i).unwrap_or("").parse().map_err(|_| {
                Error::Format(format!(
                    "{}: record {} has a non-integer field '{}'",
                    path.display(),
                    n + 1,
                    record.get(i).unwrap_or("")
                ))
            })
        };
        let (r, s) = (field(ri)?, field(ci)?);
        let ch = chi.map(field).transpose()?;
        let in_range = |v: i64, n: usize| v >= 0 && (v as usize) < n;
        if !in_range(r, h) || !in_range(s, w) || ch.is_some_and(|v| !in_range(v, c)) {
            let mut index = vec![r, s];
            index.extend(ch);
            return Err(Error::MaskIndexOutOfRange {
                entry: n + 1,
                index,
                shape: shape.to_vec(),
            });
        }
        let base = (r as usize * w + s as usize) * c;
        match ch {
            Some(v) => missing.push(base + v as usize),
            None => missing.extend(base..base + c),
        }
    }
    ObservationMask::with_missing(shape.to_vec(), missing)
}

/// Writes the missing entries of a pixel mask as `row,col,channel` records.
pub fn write_mask_csv(path: impl AsRef<Path>, mask: &ObservationMask) -> Result<()> {
    let path = path.as_ref();
    let [_, w, c]: [usize; 3] = mask
        .shape()
        .try_into()
        .map_err(|_| Error::DimensionMismatch(format!("pixel mask must be D1 x D2 x D3, got {:?}", mask.shape())))?;
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = csv::Writer::from_writer(BufWriter::new(file));
    out.write_record(["row", "col", "channel"])?;
    for (i, &o) in mask.flags().iter().enumerate() {
        if !o {
            let (px, ch) = (i / c, i % c);
            out.write_record([(px / w).to_string(), (px % w).to_string(), ch.to_string()])?;
        }
    }
    out.flush().map_err(io_err(path))
}

/// Guesses the container from an extension; used to validate output paths
/// before running long computations.
pub fn check_image_path(path: impl AsRef<Path>, channels: usize) -> Result<()> {
    container(path.as_ref(), channels).map(|_| ())
}
