//! Shared fixtures and straightforward reference implementations used as
//! oracles. Nothing here calls into the library's metric code paths.

#![allow(dead_code)]

use lfiqa::LumaImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Rows of the published probe tables: (image, MOS, SSIM, LF-SSIM).
pub const TABLE_GOOD: [(&str, f64, f64, f64); 10] = [
    ("i01_02_2.bmp", 6.10811, 0.994849, 0.9279),
    ("i03_08_1.bmp", 6.34211, 0.997039, 0.9453),
    ("i04_02_1.bmp", 6.275, 0.992736, 0.9148),
    ("i05_16_1.bmp", 6.15, 0.993907, 0.9219),
    ("i07_09_1.bmp", 6.42222, 0.990429, 0.9021),
    ("i23_16_1.bmp", 6.33333, 0.997993, 0.9542),
    ("i03_16_1.bmp", 6.82051, 0.9969, 0.9444),
    ("i12_16_1.bmp", 6.52632, 0.998817, 0.9654),
    ("i24_02_1.bmp", 6.44444, 0.996225, 0.9384),
    ("i08_04_1.bmp", 6.06452, 0.99915, 0.9709),
];
pub const TABLE_MIDDLE: [(&str, f64, f64, f64); 10] = [
    ("i01_02_4.bmp", 4.71429, 0.980467, 0.86),
    ("i01_17_3.bmp", 4.08108, 0.963197, 0.8082),
    ("i03_04_4.bmp", 4.6, 0.978184, 0.8521),
    ("i03_08_3.bmp", 4.47368, 0.970649, 0.8286),
    ("i04_17_3.bmp", 4.78049, 0.974127, 0.8391),
    ("i05_01_3.bmp", 4.84615, 0.979057, 0.8551),
    ("i05_02_5.bmp", 4.25641, 0.978483, 0.8531),
    ("i05_19_3.bmp", 4.225, 0.983719, 0.8724),
    ("i07_06_2.bmp", 4.61364, 0.973127, 0.836),
    ("i23_04_5.bmp", 4.52941, 0.975796, 0.8442),
];
pub const TABLE_BAD: [(&str, f64, f64, f64); 10] = [
    ("i03_09_5.bmp", 2.47368, 0.809075, 0.563),
    ("i20_10_5.bmp", 2.74359, 0.871029, 0.6409),
    ("i09_07_5.bmp", 2.70968, 0.848929, 0.6113),
    ("i06_07_5.bmp", 2.68571, 0.887359, 0.6643),
    ("i25_10_4.bmp", 2.14706, 0.928, 0.7317),
    ("i08_07_5.bmp", 2.3871, 0.883728, 0.659),
    ("i13_15_1.bmp", 2.73171, 0.945102, 0.7657),
    ("i18_22_4.bmp", 2.95238, 0.912675, 0.7044),
    ("i08_03_4.bmp", 2.96875, 0.877367, 0.6498),
    ("i25_22_5.bmp", 2.79412, 0.901483, 0.686),
];
/// Published "avg" rows: (MOS, SSIM, LF-SSIM) for good, middle, bad.
pub const TABLE_AVERAGES: [(f64, f64, f64); 3] = [
    (6.348656, 0.995805, 0.93853),
    (4.512015, 0.975681, 0.84488),
    (2.659378, 0.886475, 0.66761),
];

/// `<mos> <name>` manifest text for all 30 probe rows.
pub fn probe_manifest_text() -> String {
    TABLE_GOOD
        .iter()
        .chain(&TABLE_MIDDLE)
        .chain(&TABLE_BAD)
        .map(|(name, mos, _, _)| format!("{mos} {name}\n"))
        .collect()
}

/// `distorted_id,score` CSV with the published SSIM column.
pub fn probe_ssim_csv() -> String {
    let mut out = String::from("distorted_id,score\n");
    for (name, _, ssim, _) in TABLE_GOOD.iter().chain(&TABLE_MIDDLE).chain(&TABLE_BAD) {
        out.push_str(&format!("{name},{ssim}\n"));
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smooth multi-frequency texture with a mild random component, kept well
/// inside [0, 255].
pub fn textured(width: usize, height: usize, seed: u64) -> LumaImage {
    let mut r = rng(seed);
    let (p1, p2, p3): (f64, f64, f64) = (r.random(), r.random(), r.random());
    LumaImage::from_fn(width, height, |x, y| {
        let (x, y) = (x as f64, y as f64);
        let v = 128.0
            + 40.0 * (0.31 * x + 0.17 * y + 6.0 * p1).sin()
            + 30.0 * (0.11 * x - 0.37 * y + 6.0 * p2).sin()
            + 25.0 * (0.53 * x + 6.0 * p3).cos() * (0.47 * y).sin()
            + r.random_range(-15.0..15.0);
        v.clamp(0.0, 255.0)
    })
    .unwrap()
}

pub fn add_gaussian_noise(img: &LumaImage, sigma: f64, seed: u64) -> LumaImage {
    let mut r = rng(seed);
    let normal = Normal::new(0.0, sigma).unwrap();
    let data = img
        .data()
        .iter()
        .map(|v| (v + normal.sample(&mut r)).clamp(0.0, 255.0))
        .collect();
    LumaImage::new(img.width(), img.height(), data).unwrap()
}

pub fn uniform_noise_image(width: usize, height: usize, seed: u64) -> LumaImage {
    let mut r = rng(seed);
    LumaImage::from_fn(width, height, |_, _| r.random_range(0.0..=255.0)).unwrap()
}

/// Random distorted version of `img`: noise, blur, shift or contrast change.
pub fn random_distortion(img: &LumaImage, seed: u64) -> LumaImage {
    let mut r = rng(seed);
    let (w, h) = img.dimensions();
    match r.random_range(0..4) {
        0 => add_gaussian_noise(img, r.random_range(1.0..30.0), seed ^ 0xA5),
        1 => LumaImage::from_fn(w, h, |x, y| {
            let mut sum = 0.0;
            let mut n = 0.0;
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let xx = (x as i64 + dx).clamp(0, w as i64 - 1) as usize;
                    let yy = (y as i64 + dy).clamp(0, h as i64 - 1) as usize;
                    sum += img.get(xx, yy);
                    n += 1.0;
                }
            }
            sum / n
        })
        .unwrap(),
        2 => LumaImage::from_fn(w, h, |x, y| img.get((x + 1) % w, (y + 2) % h)).unwrap(),
        _ => {
            let gain: f64 = r.random_range(0.5..1.2);
            LumaImage::from_fn(w, h, |x, y| {
                ((img.get(x, y) - 128.0) * gain + 128.0).clamp(0.0, 255.0)
            })
            .unwrap()
        }
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

type Grid = Vec<Vec<f64>>;

fn to_grid(img: &LumaImage) -> Grid {
    (0..img.height())
        .map(|y| (0..img.width()).map(|x| img.get(x, y)).collect())
        .collect()
}

fn block_mean(g: &Grid, f: usize) -> Grid {
    if f == 1 {
        return g.clone();
    }
    let h = g.len() / f;
    let w = g[0].len() / f;
    let mut out = vec![vec![0.0; w]; h];
    for (by, row) in out.iter_mut().enumerate() {
        for (bx, cell) in row.iter_mut().enumerate() {
            let mut s = 0.0;
            for y in 0..f {
                for x in 0..f {
                    s += g[by * f + y][bx * f + x];
                }
            }
            *cell = s / (f * f) as f64;
        }
    }
    out
}

/// 2-D Gaussian weights evaluated directly on the 11x11 grid.
fn window_2d(size: usize, sigma: f64) -> Grid {
    let c = (size / 2) as f64;
    let mut w = vec![vec![0.0; size]; size];
    let mut total = 0.0;
    for (i, row) in w.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (di, dj) = (i as f64 - c, j as f64 - c);
            *cell = (-(di * di + dj * dj) / (2.0 * sigma * sigma)).exp();
            total += *cell;
        }
    }
    for row in w.iter_mut() {
        for cell in row.iter_mut() {
            *cell /= total;
        }
    }
    w
}

/// Returns (mean SSIM, mean cs) over all valid windows, with local
/// statistics computed by direct weighted sums around each window centre.
fn ssim_terms(a: &Grid, b: &Grid) -> (f64, f64) {
    const SIZE: usize = 11;
    let c1 = (0.01f64 * 255.0).powi(2);
    let c2 = (0.03f64 * 255.0).powi(2);
    let w = window_2d(SIZE, 1.5);
    let out_h = a.len() + 1 - SIZE;
    let out_w = a[0].len() + 1 - SIZE;
    let (mut ssim_sum, mut cs_sum) = (0.0, 0.0);
    for y in 0..out_h {
        for x in 0..out_w {
            let (mut ma, mut mb) = (0.0, 0.0);
            for i in 0..SIZE {
                for j in 0..SIZE {
                    ma += w[i][j] * a[y + i][x + j];
                    mb += w[i][j] * b[y + i][x + j];
                }
            }
            let (mut va, mut vb, mut cov) = (0.0, 0.0, 0.0);
            for i in 0..SIZE {
                for j in 0..SIZE {
                    let da = a[y + i][x + j] - ma;
                    let db = b[y + i][x + j] - mb;
                    va += w[i][j] * da * da;
                    vb += w[i][j] * db * db;
                    cov += w[i][j] * da * db;
                }
            }
            let l = (2.0 * ma * mb + c1) / (ma * ma + mb * mb + c1);
            let cs = (2.0 * cov + c2) / (va + vb + c2);
            ssim_sum += l * cs;
            cs_sum += cs;
        }
    }
    let n = (out_h * out_w) as f64;
    (ssim_sum / n, cs_sum / n)
}

/// SSIM with default constants and auto-downsampling.
pub fn oracle_ssim(a: &LumaImage, b: &LumaImage) -> f64 {
    let f = ((a.width().min(a.height()) as f64 / 256.0).round() as usize).max(1);
    ssim_terms(&block_mean(&to_grid(a), f), &block_mean(&to_grid(b), f)).0
}

pub fn oracle_ms_ssim(a: &LumaImage, b: &LumaImage) -> f64 {
    let weights = [0.0448, 0.2856, 0.3001, 0.2363, 0.1333];
    let min_dim = a.width().min(a.height());
    let mut scales = 5;
    while scales > 0 && min_dim < 11 * 2usize.pow(scales as u32 - 1) {
        scales -= 1;
    }
    assert!(scales > 0);
    let used: Vec<f64> = if scales == 5 {
        weights.to_vec()
    } else {
        let t: f64 = weights[..scales].iter().sum();
        weights[..scales].iter().map(|w| w / t).collect()
    };
    let mut ga = to_grid(a);
    let mut gb = to_grid(b);
    let mut result = 1.0;
    for (s, w) in used.iter().enumerate() {
        let (ssim, cs) = ssim_terms(&ga, &gb);
        let term = if s + 1 == scales { ssim } else { cs };
        result *= term.max(0.0).powf(*w);
        ga = block_mean(&ga, 2);
        gb = block_mean(&gb, 2);
    }
    result
}

pub fn oracle_gmsd(a: &LumaImage, b: &LumaImage) -> f64 {
    let kx = [[-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0]];
    let grad = |g: &Grid| -> Grid {
        let (h, w) = (g.len() - 2, g[0].len() - 2);
        let mut out = vec![vec![0.0; w]; h];
        for y in 0..h {
            for x in 0..w {
                let (mut gx, mut gy) = (0.0, 0.0);
                for i in 0..3 {
                    for j in 0..3 {
                        gx += kx[i][j] / 3.0 * g[y + i][x + j];
                        gy += kx[j][i] / 3.0 * g[y + i][x + j];
                    }
                }
                out[y][x] = (gx * gx + gy * gy).sqrt();
            }
        }
        out
    };
    let ga = grad(&block_mean(&to_grid(a), 2));
    let gb = grad(&block_mean(&to_grid(b), 2));
    let mut values = Vec::new();
    for (ra, rb) in ga.iter().zip(&gb) {
        for (&x, &y) in ra.iter().zip(rb) {
            values.push((2.0 * x * y + 170.0) / (x * x + y * y + 170.0));
        }
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

/// Textbook Pearson correlation via raw sums.
pub fn oracle_plcc(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let syy: f64 = ys.iter().map(|y| y * y).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

/// Direct formula evaluation, independent of the library's rationalized form.
pub fn oracle_lf(variant: &str, s: f64) -> f64 {
    match variant {
        "eq1" => 1.0 - (1.0 - s).sqrt(),
        "eq2" => 1.0 - (1.0 - s * s).sqrt(),
        "eq3" => 1.0 - (1.0 - s * s).powf(1.0 / 3.0),
        _ => unreachable!(),
    }
}

pub fn checkerboard(size: usize, cell: usize) -> LumaImage {
    LumaImage::from_fn(size, size, |x, y| {
        if (x / cell + y / cell).is_multiple_of(2) {
            30.0
        } else {
            220.0
        }
    })
    .unwrap()
}

pub fn translate(img: &LumaImage, dx: usize) -> LumaImage {
    let (w, h) = img.dimensions();
    LumaImage::from_fn(w, h, |x, y| img.get((x + w - dx) % w, y)).unwrap()
}
