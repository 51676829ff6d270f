//! Gradient magnitude similarity deviation.

use super::filter::{mean_pool, Plane};
use super::{check_same_dimensions, MetricError};
use crate::LumaImage;

/// Stabilizer for 8-bit inputs with the 1/3-normalized Prewitt operator.
pub const GMSD_STABILIZER: f64 = 170.0;

const DOWNSAMPLE: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct GmsdOutput {
    /// Population standard deviation of `similarity_map`; lower is better.
    pub score: f64,
    pub similarity_map: Vec<f64>,
    pub map_width: usize,
    pub map_height: usize,
}

/// Prewitt gradient magnitude over the valid interior.
fn gradient_magnitude(p: &Plane) -> Plane {
    let (w, h) = (p.width - 2, p.height - 2);
    let at = |x: usize, y: usize| p.data[y * p.width + x];
    let mut data = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let mut gx = 0.0;
            let mut gy = 0.0;
            for k in 0..3 {
                gx += at(x + 2, y + k) - at(x, y + k);
                gy += at(x + k, y + 2) - at(x + k, y);
            }
            gx /= 3.0;
            gy /= 3.0;
            data.push((gx * gx + gy * gy).sqrt());
        }
    }
    Plane {
        width: w,
        height: h,
        data,
    }
}

/// GMSD of a distorted image against its reference.
///
/// Both images are 2x2 mean-pooled, Prewitt gradients are taken over the
/// valid interior, and the score is the population standard deviation of
/// `(2 g_r g_d + c) / (g_r^2 + g_d^2 + c)`. Needs at least 6x6 input so the
/// pooled image still holds one full 3x3 neighbourhood.
pub fn gmsd(reference: &LumaImage, distorted: &LumaImage) -> Result<GmsdOutput, MetricError> {
    check_same_dimensions(reference, distorted)?;
    let min_side = DOWNSAMPLE * 3;
    if reference.width().min(reference.height()) < min_side {
        return Err(MetricError::ImageTooSmall {
            width: reference.width(),
            height: reference.height(),
            requirement: format!("both sides must be at least {min_side}"),
        });
    }
    let g_ref = gradient_magnitude(&mean_pool(&Plane::from_image(reference), DOWNSAMPLE));
    let g_dist = gradient_magnitude(&mean_pool(&Plane::from_image(distorted), DOWNSAMPLE));
    let map = g_ref.zip_map(&g_dist, |a, b| {
        (2.0 * a * b + GMSD_STABILIZER) / (a * a + b * b + GMSD_STABILIZER)
    });
    let n = map.data.len() as f64;
    let mean = map.data.iter().sum::<f64>() / n;
    let var = map.data.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Ok(GmsdOutput {
        score: var.sqrt(),
        similarity_map: map.data,
        map_width: map.width,
        map_height: map.height,
    })
}
