use super::{Direction, MetricError, MetricKind, SimilarityScore};

/// Maps a raw metric value onto a similarity in `[0, 1]`, 1 meaning
/// identical.
///
/// With `hi` the upper bound of the metric's native range:
/// higher-better metrics become `clamp(value / hi, 0, 1)` (identity plus
/// clamping for `[0, 1]` and `[-1, 1]` ranges, `value / 100` for VMAF);
/// lower-better metrics become `1 - clamp(value / hi, 0, 1)`.
pub fn normalize_direction(kind: &MetricKind, value: f64) -> Result<SimilarityScore, MetricError> {
    if !value.is_finite() {
        return Err(MetricError::ValueOutOfRange {
            label: kind.label().to_string(),
            value,
            range: kind.native_range(),
        });
    }
    let hi = kind.native_range().hi();
    let scaled = if hi == 1.0 { value } else { value / hi };
    let scaled = scaled.clamp(0.0, 1.0);
    let similarity = match kind.direction() {
        Direction::SimilarityHigherBetter => scaled,
        Direction::DistortionLowerBetter => 1.0 - scaled,
    };
    SimilarityScore::new(similarity, kind.clone())
}

impl super::MetricScore {
    pub fn similarity(&self) -> SimilarityScore {
        normalize_direction(self.kind(), self.value()).expect("metric scores are finite")
    }
}
