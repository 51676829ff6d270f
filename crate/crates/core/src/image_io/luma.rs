use std::io::Cursor;
use std::path::{Path, PathBuf};

use image::{DynamicImage, ImageFormat, ImageReader};

/// BT.601 full-range luma weights.
const LUMA_R: f64 = 0.299;
const LUMA_G: f64 = 0.587;
const LUMA_B: f64 = 0.114;

#[derive(Debug, thiserror::Error)]
pub enum ImageError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unsupported image format{}", .0.as_ref().map(|d| format!(": {d}")).unwrap_or_default())]
    UnsupportedFormat(Option<String>),
    #[error("failed to decode image: {0}")]
    Decode(String),
    #[error("image has zero width or height")]
    ZeroDimension,
    #[error("sample buffer holds {len} values, expected {width}x{height}")]
    LengthMismatch {
        width: usize,
        height: usize,
        len: usize,
    },
    #[error("sample {value} at index {index} is outside [0, 255]")]
    SampleOutOfRange { index: usize, value: f64 },
}

/// A single-channel image plane with real-valued samples in `[0, 255]`,
/// stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct LumaImage {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl LumaImage {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        if data.len() != width * height {
            return Err(ImageError::LengthMismatch {
                width,
                height,
                len: data.len(),
            });
        }
        if let Some((index, &value)) = data
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=255.0).contains(*v))
        {
            return Err(ImageError::SampleOutOfRange { index, value });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Builds an image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, ImageError> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }
}

/// Converts one RGB pixel to luma. The result is kept inside the channel
/// range so that gray pixels map back to their exact value.
pub(crate) fn rgb_to_luma(r: u8, g: u8, b: u8) -> f64 {
    let (r, g, b) = (f64::from(r), f64::from(g), f64::from(b));
    let y = LUMA_R * r + LUMA_G * g + LUMA_B * b;
    y.clamp(r.min(g).min(b), r.max(g).max(b))
}

/// Decodes a BMP or PNG file into a luma plane.
///
/// Grayscale inputs pass through unchanged. RGB inputs are converted with
/// BT.601 weights and are not requantized. Alpha channels are ignored.
pub fn load_image(path: impl AsRef<Path>) -> Result<LumaImage, ImageError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| ImageError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    decode_luma(&bytes)
}

/// Decodes in-memory BMP or PNG bytes into a luma plane.
pub fn decode_luma(bytes: &[u8]) -> Result<LumaImage, ImageError> {
    let reader = ImageReader::new(Cursor::new(bytes))
        .with_guessed_format()
        .map_err(|e| ImageError::Decode(e.to_string()))?;
    match reader.format() {
        Some(ImageFormat::Bmp | ImageFormat::Png) => {}
        Some(other) => return Err(ImageError::UnsupportedFormat(Some(format!("{other:?}")))),
        None => return Err(ImageError::UnsupportedFormat(None)),
    }
    let decoded = reader.decode().map_err(|e| match e {
        image::ImageError::Unsupported(u) => ImageError::UnsupportedFormat(Some(u.to_string())),
        other => ImageError::Decode(other.to_string()),
    })?;
    let (width, height) = (decoded.width() as usize, decoded.height() as usize);
    if width == 0 || height == 0 {
        return Err(ImageError::ZeroDimension);
    }
    let data: Vec<f64> = match decoded {
        DynamicImage::ImageLuma8(img) => img.into_raw().into_iter().map(f64::from).collect(),
        DynamicImage::ImageLumaA8(img) => img.pixels().map(|p| f64::from(p.0[0])).collect(),
        DynamicImage::ImageRgb8(img) => img
            .pixels()
            .map(|p| rgb_to_luma(p.0[0], p.0[1], p.0[2]))
            .collect(),
        DynamicImage::ImageRgba8(img) => img
            .pixels()
            .map(|p| rgb_to_luma(p.0[0], p.0[1], p.0[2]))
            .collect(),
        other => {
            return Err(ImageError::UnsupportedFormat(Some(format!(
                "{:?} samples (only 8-bit gray/RGB are supported)",
                other.color()
            ))))
        }
    };
    LumaImage::new(width, height, data)
}
