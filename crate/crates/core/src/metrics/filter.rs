use crate::LumaImage;

/// Working plane for intermediate products; unlike [`LumaImage`] it carries
/// no range restriction.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Plane {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f64>,
}

impl Plane {
    pub fn from_image(img: &LumaImage) -> Self {
        Self {
            width: img.width(),
            height: img.height(),
            data: img.data().to_vec(),
        }
    }

    pub fn zip_map(&self, other: &Plane, f: impl Fn(f64, f64) -> f64) -> Plane {
        debug_assert_eq!((self.width, self.height), (other.width, other.height));
        Plane {
            width: self.width,
            height: self.height,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn min_dimension(&self) -> usize {
        self.width.min(self.height)
    }
}

/// Normalized 1-D Gaussian of odd length `size`.
pub(crate) fn gaussian_kernel(size: usize, sigma: f64) -> Vec<f64> {
    let center = (size / 2) as f64;
    let raw: Vec<f64> = (0..size)
        .map(|i| {
            let d = i as f64 - center;
            (-(d * d) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

/// Separable correlation with a symmetric kernel, keeping only positions
/// where the window lies fully inside the plane.
pub(crate) fn filter_valid(plane: &Plane, kernel: &[f64]) -> Plane {
    let k = kernel.len();
    let out_w = plane.width + 1 - k;
    let out_h = plane.height + 1 - k;

    let mut rows = vec![0.0; out_w * plane.height];
    for y in 0..plane.height {
        let src = &plane.data[y * plane.width..(y + 1) * plane.width];
        let dst = &mut rows[y * out_w..(y + 1) * out_w];
        for (x, out) in dst.iter_mut().enumerate() {
            *out = src[x..x + k].iter().zip(kernel).map(|(a, w)| a * w).sum();
        }
    }

    let mut data = vec![0.0; out_w * out_h];
    for y in 0..out_h {
        let dst = &mut data[y * out_w..(y + 1) * out_w];
        for (i, &w) in kernel.iter().enumerate() {
            let src = &rows[(y + i) * out_w..(y + i + 1) * out_w];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += w * s;
            }
        }
    }
    Plane {
        width: out_w,
        height: out_h,
        data,
    }
}

/// Non-overlapping `factor`x`factor` block means; trailing rows and columns
/// that do not fill a block are dropped.
pub(crate) fn mean_pool(plane: &Plane, factor: usize) -> Plane {
    if factor <= 1 {
        return plane.clone();
    }
    let out_w = plane.width / factor;
    let out_h = plane.height / factor;
    let norm = (factor * factor) as f64;
    let mut data = Vec::with_capacity(out_w * out_h);
    for by in 0..out_h {
        for bx in 0..out_w {
            let mut sum = 0.0;
            for y in by * factor..(by + 1) * factor {
                let start = y * plane.width + bx * factor;
                sum += plane.data[start..start + factor].iter().sum::<f64>();
            }
            data.push(sum / norm);
        }
    }
    Plane {
        width: out_w,
        height: out_h,
        data,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        let k = gaussian_kernel(11, 1.5);
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        for i in 0..11 {
            assert_eq!(k[i], k[10 - i]);
        }
        assert!(k[5] > k[4]);
    }

    #[test]
    fn valid_filter_shape_and_values() {
        let plane = Plane {
            width: 4,
            height: 3,
            data: (0..12).map(f64::from).collect(),
        };
        let out = filter_valid(&plane, &[0.25, 0.5, 0.25]);
        assert_eq!((out.width, out.height), (2, 1));
        // centre pixels 5 and 6 of a linear ramp are preserved
        assert!((out.data[0] - 5.0).abs() < 1e-12);
        assert!((out.data[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn pooling_drops_remainder() {
        let plane = Plane {
            width: 5,
            height: 3,
            data: (0..15).map(f64::from).collect(),
        };
        let out = mean_pool(&plane, 2);
        assert_eq!((out.width, out.height), (2, 1));
        assert_eq!(out.data, vec![3.0, 5.0]);
    }
}
