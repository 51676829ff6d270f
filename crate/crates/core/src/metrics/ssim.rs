//! Structural similarity with Gaussian-weighted local statistics.

use super::filter::{filter_valid, gaussian_kernel, mean_pool, Plane};
use super::{check_same_dimensions, MetricError};
use crate::LumaImage;

/// SSIM configuration. The defaults are the constants of the original
/// reference implementation: 11x11 Gaussian window with sigma 1.5,
/// `K1 = 0.01`, `K2 = 0.03`, dynamic range 255.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SsimParams {
    pub window_size: usize,
    pub sigma: f64,
    pub k1: f64,
    pub k2: f64,
    pub dynamic_range: f64,
    /// Mean-pool both images by `max(1, round(min(w, h) / 256))` first.
    pub auto_downsample: bool,
}

impl Default for SsimParams {
    fn default() -> Self {
        Self {
            window_size: 11,
            sigma: 1.5,
            k1: 0.01,
            k2: 0.03,
            dynamic_range: 255.0,
            auto_downsample: true,
        }
    }
}

impl SsimParams {
    pub fn validate(&self) -> Result<(), MetricError> {
        if self.window_size == 0 || self.window_size.is_multiple_of(2) {
            return Err(MetricError::InvalidParams(format!(
                "window size must be odd, got {}",
                self.window_size
            )));
        }
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(MetricError::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("sigma", self.sigma)?;
        positive("k1", self.k1)?;
        positive("k2", self.k2)?;
        positive("dynamic range", self.dynamic_range)
    }

    pub fn c1(&self) -> f64 {
        (self.k1 * self.dynamic_range).powi(2)
    }

    pub fn c2(&self) -> f64 {
        (self.k2 * self.dynamic_range).powi(2)
    }

    pub(crate) fn kernel(&self) -> Vec<f64> {
        gaussian_kernel(self.window_size, self.sigma)
    }
}

/// Pooling factor applied before SSIM when auto-downsampling is enabled.
pub fn downsample_factor(width: usize, height: usize) -> usize {
    let f = (width.min(height) as f64 / 256.0).round() as usize;
    f.max(1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SsimOutput {
    /// Mean of `window_map`.
    pub score: f64,
    /// Per-window SSIM, row-major over the valid region.
    pub window_map: Vec<f64>,
    pub map_width: usize,
    pub map_height: usize,
    /// Pooling factor that was applied before windowing (1 = none).
    pub downsample_factor: usize,
}

/// Per-window SSIM and contrast-structure maps over the valid region.
pub(crate) struct SsimMaps {
    pub ssim: Vec<f64>,
    pub cs: Vec<f64>,
    pub width: usize,
    pub height: usize,
}

pub(crate) fn ssim_maps(a: &Plane, b: &Plane, params: &SsimParams, kernel: &[f64]) -> SsimMaps {
    let c1 = params.c1();
    let c2 = params.c2();
    let mu_a = filter_valid(a, kernel);
    let mu_b = filter_valid(b, kernel);
    let e_aa = filter_valid(&a.zip_map(a, |x, y| x * y), kernel);
    let e_bb = filter_valid(&b.zip_map(b, |x, y| x * y), kernel);
    let e_ab = filter_valid(&a.zip_map(b, |x, y| x * y), kernel);

    let n = mu_a.data.len();
    let mut ssim = Vec::with_capacity(n);
    let mut cs = Vec::with_capacity(n);
    for i in 0..n {
        let (ma, mb) = (mu_a.data[i], mu_b.data[i]);
        let var_a = e_aa.data[i] - ma * ma;
        let var_b = e_bb.data[i] - mb * mb;
        let cov = e_ab.data[i] - ma * mb;
        let luminance = (2.0 * ma * mb + c1) / (ma * ma + mb * mb + c1);
        let contrast_structure = (2.0 * cov + c2) / (var_a + var_b + c2);
        // |value| <= 1 holds exactly; clamping only strips rounding excess.
        cs.push(contrast_structure.clamp(-1.0, 1.0));
        ssim.push((luminance * contrast_structure).clamp(-1.0, 1.0));
    }
    SsimMaps {
        ssim,
        cs,
        width: mu_a.width,
        height: mu_a.height,
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean SSIM between two equally sized luma images.
///
/// Only windows that fit entirely inside the (optionally downsampled) image
/// contribute; there is no padding. The returned `window_map` is what
/// per-window logistic mapping consumes.
pub fn ssim(
    reference: &LumaImage,
    distorted: &LumaImage,
    params: &SsimParams,
) -> Result<SsimOutput, MetricError> {
    params.validate()?;
    check_same_dimensions(reference, distorted)?;
    let factor = if params.auto_downsample {
        downsample_factor(reference.width(), reference.height())
    } else {
        1
    };
    let a = mean_pool(&Plane::from_image(reference), factor);
    let b = mean_pool(&Plane::from_image(distorted), factor);
    if a.min_dimension() < params.window_size {
        return Err(MetricError::ImageTooSmall {
            width: reference.width(),
            height: reference.height(),
            requirement: format!(
                "both sides must be at least {} after {factor}x downsampling",
                params.window_size
            ),
        });
    }
    let maps = ssim_maps(&a, &b, params, &params.kernel());
    Ok(SsimOutput {
        score: mean(&maps.ssim),
        window_map: maps.ssim,
        map_width: maps.width,
        map_height: maps.height,
        downsample_factor: factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(w: usize, h: usize, v: f64) -> LumaImage {
        LumaImage::new(w, h, vec![v; w * h]).unwrap()
    }

    fn textured(w: usize, h: usize, phase: f64) -> LumaImage {
        LumaImage::from_fn(w, h, |x, y| {
            127.5 + 100.0 * ((x as f64 * 0.37 + phase).sin() * (y as f64 * 0.23).cos())
        })
        .unwrap()
    }

    #[test]
    fn identical_images_score_one() {
        let img = textured(40, 30, 0.0);
        let out = ssim(&img, &img, &SsimParams::default()).unwrap();
        assert_eq!(out.score, 1.0);
        assert_eq!((out.map_width, out.map_height), (30, 20));
        assert!(out.window_map.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn constant_images_reduce_to_luminance_term() {
        let params = SsimParams::default();
        let out = ssim(&constant(32, 32, 100.0), &constant(32, 32, 110.0), &params).unwrap();
        let c1 = params.c1();
        let expected = (2.0 * 100.0 * 110.0 + c1) / (100.0f64.powi(2) + 110.0f64.powi(2) + c1);
        assert!(
            (out.score - expected).abs() < 1e-12,
            "{} vs {expected}",
            out.score
        );
    }

    #[test]
    fn symmetric_bit_for_bit() {
        let a = textured(48, 48, 0.0);
        let b = textured(48, 48, 0.4);
        let p = SsimParams::default();
        assert_eq!(
            ssim(&a, &b, &p).unwrap().score,
            ssim(&b, &a, &p).unwrap().score
        );
    }

    #[test]
    fn errors() {
        let p = SsimParams::default();
        assert!(matches!(
            ssim(&constant(20, 20, 1.0), &constant(20, 21, 1.0), &p),
            Err(MetricError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            ssim(&constant(10, 20, 1.0), &constant(10, 20, 1.0), &p),
            Err(MetricError::ImageTooSmall { .. })
        ));
        let bad = SsimParams {
            window_size: 10,
            ..p
        };
        assert!(matches!(
            ssim(&constant(20, 20, 1.0), &constant(20, 20, 1.0), &bad),
            Err(MetricError::InvalidParams(_))
        ));
        let bad = SsimParams { sigma: 0.0, ..p };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn downsample_factor_rounds() {
        assert_eq!(downsample_factor(64, 64), 1);
        assert_eq!(downsample_factor(512, 384), 2);
        assert_eq!(downsample_factor(512, 512), 2);
        assert_eq!(downsample_factor(1000, 700), 3);
        assert_eq!(downsample_factor(383, 1000), 1);
    }

    #[test]
    fn auto_downsample_shrinks_map() {
        let a = textured(520, 520, 0.0);
        let b = textured(520, 520, 0.1);
        let on = ssim(&a, &b, &SsimParams::default()).unwrap();
        let off = ssim(
            &a,
            &b,
            &SsimParams {
                auto_downsample: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(on.downsample_factor, 2);
        assert_eq!((on.map_width, off.map_width), (250, 510));
    }

    #[test]
    fn pooling_matches_window_mean() {
        let a = textured(33, 45, 0.0);
        let b = textured(33, 45, 1.1);
        let out = ssim(&a, &b, &SsimParams::default()).unwrap();
        let m = out.window_map.iter().sum::<f64>() / out.window_map.len() as f64;
        assert!((m - out.score).abs() <= 1e-12);
    }
}
