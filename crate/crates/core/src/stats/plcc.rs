use super::StatsError;

/// Pearson linear correlation of two paired series.
///
/// Uses the two-pass centered form; the normalization constant cancels.
/// The result is clamped to `[-1, 1]` to absorb rounding.
pub fn plcc(xs: &[f64], ys: &[f64]) -> Result<f64, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(StatsError::TooFewValues(xs.len()));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return Err(StatsError::ConstantSeries("first"));
    }
    if syy == 0.0 {
        return Err(StatsError::ConstantSeries("second"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_lines() {
        assert!((plcc(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((plcc(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn hand_computed_value() {
        // 3 / sqrt(2 * 42 / 9)
        let r = plcc(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap();
        assert!((r - 0.981981).abs() < 5e-7);
        assert!((r - 3.0 / (2.0f64 * 42.0 / 9.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert_eq!(
            plcc(&[1.0, 2.0], &[1.0]),
            Err(StatsError::LengthMismatch(2, 1))
        );
        assert_eq!(plcc(&[1.0], &[1.0]), Err(StatsError::TooFewValues(1)));
        assert_eq!(
            plcc(&[2.0, 2.0], &[1.0, 3.0]),
            Err(StatsError::ConstantSeries("first"))
        );
        assert_eq!(
            plcc(&[1.0, 3.0], &[5.0, 5.0]),
            Err(StatsError::ConstantSeries("second"))
        );
        assert_eq!(
            plcc(&[1.0, f64::NAN], &[1.0, 2.0]),
            Err(StatsError::NonFinite)
        );
    }
}
