use std::fmt;
use std::str::FromStr;

use super::MetricError;

/// Which way a metric's raw value points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Larger raw values mean closer to the reference (SSIM, VMAF, FSIM...).
    SimilarityHigherBetter,
    /// Smaller raw values mean closer to the reference (GMSD).
    DistortionLowerBetter,
}

impl FromStr for Direction {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "higher" | "higher-better" | "similarity" | "similarity-higher-better" => {
                Ok(Self::SimilarityHigherBetter)
            }
            "lower" | "lower-better" | "distortion" | "distortion-lower-better" => {
                Ok(Self::DistortionLowerBetter)
            }
            other => Err(MetricError::InvalidArgument(format!(
                "unknown direction `{other}` (expected higher-better or lower-better)"
            ))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SimilarityHigherBetter => "similarity-higher-better",
            Self::DistortionLowerBetter => "distortion-lower-better",
        })
    }
}

/// Closed interval of values a metric can produce.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NativeRange {
    lo: f64,
    hi: f64,
}

impl NativeRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self, MetricError> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(MetricError::InvalidArgument(format!(
                "empty or non-finite range [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, value: f64) -> bool {
        (self.lo..=self.hi).contains(&value)
    }
}

impl fmt::Display for NativeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MetricName {
    Ssim,
    MsSsim,
    Gmsd,
    /// Any metric whose scores are read from a file rather than computed.
    Ingested(String),
}

impl MetricName {
    pub fn label(&self) -> &str {
        match self {
            Self::Ssim => "ssim",
            Self::MsSsim => "ms_ssim",
            Self::Gmsd => "gmsd",
            Self::Ingested(label) => label,
        }
    }

    /// Parses one of the natively computed metric names.
    pub fn native(label: &str) -> Option<Self> {
        match label {
            "ssim" => Some(Self::Ssim),
            "ms_ssim" | "ms-ssim" | "msssim" => Some(Self::MsSsim),
            "gmsd" => Some(Self::Gmsd),
            _ => None,
        }
    }

    pub fn is_native(&self) -> bool {
        !matches!(self, Self::Ingested(_))
    }
}

impl fmt::Display for MetricName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Metric identity together with its direction and value range.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricKind {
    name: MetricName,
    direction: Direction,
    native_range: NativeRange,
}

impl MetricKind {
    pub fn ssim() -> Self {
        Self {
            name: MetricName::Ssim,
            direction: Direction::SimilarityHigherBetter,
            native_range: NativeRange { lo: -1.0, hi: 1.0 },
        }
    }

    pub fn ms_ssim() -> Self {
        Self {
            name: MetricName::MsSsim,
            direction: Direction::SimilarityHigherBetter,
            native_range: NativeRange { lo: 0.0, hi: 1.0 },
        }
    }

    /// GMSD is bounded by 0.5 in practice; the declared range is `[0, 1]`
    /// so that direction normalization reduces to `1 - value`.
    pub fn gmsd() -> Self {
        Self {
            name: MetricName::Gmsd,
            direction: Direction::DistortionLowerBetter,
            native_range: NativeRange { lo: 0.0, hi: 1.0 },
        }
    }

    /// Declares an externally computed metric. The range's upper bound must
    /// be positive because normalization divides by it.
    pub fn ingested(
        label: impl Into<String>,
        direction: Direction,
        native_range: NativeRange,
    ) -> Result<Self, MetricError> {
        let label = label.into();
        if label.is_empty() {
            return Err(MetricError::InvalidArgument("metric label is empty".into()));
        }
        if MetricName::native(&label).is_some() {
            return Err(MetricError::InvalidArgument(format!(
                "`{label}` is a native metric name; choose another label for ingested scores"
            )));
        }
        if native_range.hi <= 0.0 {
            return Err(MetricError::InvalidArgument(format!(
                "range {native_range} must have a positive upper bound"
            )));
        }
        Ok(Self {
            name: MetricName::Ingested(label),
            direction,
            native_range,
        })
    }

    pub fn native(name: &MetricName) -> Option<Self> {
        match name {
            MetricName::Ssim => Some(Self::ssim()),
            MetricName::MsSsim => Some(Self::ms_ssim()),
            MetricName::Gmsd => Some(Self::gmsd()),
            MetricName::Ingested(_) => None,
        }
    }

    pub fn name(&self) -> &MetricName {
        &self.name
    }

    pub fn label(&self) -> &str {
        self.name.label()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn native_range(&self) -> NativeRange {
        self.native_range
    }
}

/// Slack allowed when a computed value lands a rounding error outside its
/// declared range.
const RANGE_SLACK: f64 = 1e-9;

/// One metric's raw output for one image pair.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricScore {
    kind: MetricKind,
    value: f64,
    pair: (String, String),
}

impl MetricScore {
    /// Values within rounding slack of the range are clamped onto it; values
    /// further out are rejected.
    pub fn new(
        kind: MetricKind,
        value: f64,
        reference_id: impl Into<String>,
        distorted_id: impl Into<String>,
    ) -> Result<Self, MetricError> {
        let range = kind.native_range;
        if !value.is_finite() || value < range.lo - RANGE_SLACK || value > range.hi + RANGE_SLACK {
            return Err(MetricError::ValueOutOfRange {
                label: kind.label().to_string(),
                value,
                range,
            });
        }
        Ok(Self {
            value: value.clamp(range.lo, range.hi),
            kind,
            pair: (reference_id.into(), distorted_id.into()),
        })
    }

    pub fn kind(&self) -> &MetricKind {
        &self.kind
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn reference_id(&self) -> &str {
        &self.pair.0
    }

    pub fn distorted_id(&self) -> &str {
        &self.pair.1
    }
}

/// A direction-normalized score in `[0, 1]` where 1 means identical.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityScore {
    value: f64,
    source_kind: MetricKind,
}

impl SimilarityScore {
    pub fn new(value: f64, source_kind: MetricKind) -> Result<Self, MetricError> {
        if !(0.0..=1.0).contains(&value) {
            return Err(MetricError::ValueOutOfRange {
                label: format!("similarity from {}", source_kind.label()),
                value,
                range: NativeRange { lo: 0.0, hi: 1.0 },
            });
        }
        Ok(Self { value, source_kind })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn source_kind(&self) -> &MetricKind {
        &self.source_kind
    }
}
