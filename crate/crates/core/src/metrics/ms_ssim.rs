//! Multi-scale SSIM over a dyadic mean-pooled pyramid.

use super::filter::{mean_pool, Plane};
use super::ssim::{mean, ssim_maps};
use super::{check_same_dimensions, MetricError, SsimParams};
use crate::LumaImage;

pub const MS_SSIM_SCALES: usize = 5;

/// Per-scale exponents, finest scale first.
pub const MS_SSIM_WEIGHTS: [f64; MS_SSIM_SCALES] = [0.0448, 0.2856, 0.3001, 0.2363, 0.1333];

#[derive(Clone, Debug, PartialEq)]
pub struct MsSsimOutput {
    pub score: f64,
    pub scales_used: usize,
    /// Exponents actually applied; renormalized to sum 1 on fallback.
    pub weights: Vec<f64>,
    /// Mean contrast-structure term per scale, plus the full SSIM mean at
    /// the coarsest scale in the last slot.
    pub scale_values: Vec<f64>,
}

impl MsSsimOutput {
    /// True when the image was too small for all five scales.
    pub fn fallback(&self) -> bool {
        self.scales_used < MS_SSIM_SCALES
    }
}

/// Largest scale count `s <= 5` with `min_dim >= window * 2^(s-1)`.
pub fn usable_scales(min_dim: usize, window: usize) -> usize {
    (1..=MS_SSIM_SCALES)
        .rev()
        .find(|&s| min_dim >= window << (s - 1))
        .unwrap_or(0)
}

/// MS-SSIM with the published five-scale exponents.
///
/// Scales 1..s-1 contribute their mean contrast-structure term, the coarsest
/// scale contributes its mean full SSIM (luminance times contrast-structure).
/// Negative per-scale terms are floored at zero before exponentiation.
/// `params.auto_downsample` is not applied: the pyramid already covers it.
///
/// Images too small for five scales fall back to the largest usable count
/// with the leading exponents renormalized to sum 1; see
/// [`MsSsimOutput::fallback`].
pub fn ms_ssim(
    reference: &LumaImage,
    distorted: &LumaImage,
    params: &SsimParams,
) -> Result<MsSsimOutput, MetricError> {
    params.validate()?;
    check_same_dimensions(reference, distorted)?;
    let min_dim = reference.width().min(reference.height());
    let scales = usable_scales(min_dim, params.window_size);
    if scales == 0 {
        return Err(MetricError::ImageTooSmall {
            width: reference.width(),
            height: reference.height(),
            requirement: format!("both sides must be at least {}", params.window_size),
        });
    }
    let weights: Vec<f64> = if scales == MS_SSIM_SCALES {
        MS_SSIM_WEIGHTS.to_vec()
    } else {
        let total: f64 = MS_SSIM_WEIGHTS[..scales].iter().sum();
        MS_SSIM_WEIGHTS[..scales]
            .iter()
            .map(|w| w / total)
            .collect()
    };
    if scales < MS_SSIM_SCALES {
        log::debug!(
            "ms_ssim: {}x{} supports only {scales} scales",
            reference.width(),
            reference.height()
        );
    }

    let kernel = params.kernel();
    let mut a = Plane::from_image(reference);
    let mut b = Plane::from_image(distorted);
    let mut scale_values = Vec::with_capacity(scales);
    for scale in 0..scales {
        let maps = ssim_maps(&a, &b, params, &kernel);
        if scale + 1 == scales {
            scale_values.push(mean(&maps.ssim));
        } else {
            scale_values.push(mean(&maps.cs));
            a = mean_pool(&a, 2);
            b = mean_pool(&b, 2);
        }
    }
    let score = scale_values
        .iter()
        .zip(&weights)
        .map(|(v, w)| v.max(0.0).powf(*w))
        .product();
    Ok(MsSsimOutput {
        score,
        scales_used: scales,
        weights,
        scale_values,
    })
}
