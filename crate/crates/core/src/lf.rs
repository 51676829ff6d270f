//! Logistic remapping of similarity scores.
//!
//! Every variant is a fixed, strictly increasing map of `[0, 1]` onto itself
//! that fixes both endpoints and stretches the saturated top of the scale:
//!
//! | variant | formula              |
//! |---------|----------------------|
//! | `eq1`   | `1 - (1 - s)^(1/2)`  |
//! | `eq2`   | `1 - (1 - s^2)^(1/2)`|
//! | `eq3`   | `1 - (1 - s^2)^(1/3)`|
//!
//! The mapping can be applied to a final pooled score or to each SSIM window
//! before pooling. The two are not equivalent; for `eq1` the per-window
//! result is never smaller, by convexity.

use std::fmt;
use std::str::FromStr;

use crate::metrics::{MetricKind, SimilarityScore};

#[derive(Debug, thiserror::Error)]
pub enum LfError {
    #[error("window map is empty")]
    EmptyWindowMap,
    #[error("unknown logistic variant `{0}` (expected eq1, eq2, eq3 or none)")]
    UnknownVariant(String),
    #[error("unknown logistic mode `{0}` (expected final or per-window)")]
    UnknownMode(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LfVariant {
    #[default]
    Eq1,
    Eq2,
    Eq3,
}

impl LfVariant {
    pub const ALL: [LfVariant; 3] = [Self::Eq1, Self::Eq2, Self::Eq3];

    /// Applies the variant to a value in `[0, 1]`.
    ///
    /// Each formula `1 - r` is evaluated in the algebraically equal form
    /// `(1 - r^k) / (1 + r + .. + r^(k-1))`, which is exact at both endpoints
    /// and keeps full relative precision near zero.
    #[inline]
    pub fn apply(self, s: f64) -> f64 {
        debug_assert!(
            (0.0..=1.0).contains(&s),
            "logistic input {s} outside [0, 1]"
        );
        match self {
            Self::Eq1 => s / (1.0 + (1.0 - s).sqrt()),
            Self::Eq2 => {
                let sq = s * s;
                sq / (1.0 + (1.0 - sq).sqrt())
            }
            Self::Eq3 => {
                let sq = s * s;
                let r = (1.0 - sq).cbrt();
                sq / (1.0 + r + r * r)
            }
        }
    }
}

impl FromStr for LfVariant {
    type Err = LfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq1" => Ok(Self::Eq1),
            "eq2" => Ok(Self::Eq2),
            "eq3" => Ok(Self::Eq3),
            other => Err(LfError::UnknownVariant(other.to_string())),
        }
    }
}

impl fmt::Display for LfVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Eq1 => "eq1",
            Self::Eq2 => "eq2",
            Self::Eq3 => "eq3",
        })
    }
}

/// A logistic variant, or `none` for the identity map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LfChoice {
    Mapped(LfVariant),
    Identity,
}

impl Default for LfChoice {
    fn default() -> Self {
        Self::Mapped(LfVariant::Eq1)
    }
}

impl LfChoice {
    pub fn apply(self, s: f64) -> f64 {
        match self {
            Self::Mapped(v) => v.apply(s),
            Self::Identity => s,
        }
    }

    pub fn variant(self) -> Option<LfVariant> {
        match self {
            Self::Mapped(v) => Some(v),
            Self::Identity => None,
        }
    }
}

impl FromStr for LfChoice {
    type Err = LfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Self::Identity),
            other => other.parse().map(Self::Mapped),
        }
    }
}

impl fmt::Display for LfChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Mapped(v) => v.fmt(f),
            Self::Identity => f.write_str("none"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LfMode {
    /// Map the pooled metric score.
    #[default]
    Final,
    /// Map each SSIM window, then pool.
    PerWindow,
}

impl FromStr for LfMode {
    type Err = LfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "final" => Ok(Self::Final),
            "per-window" => Ok(Self::PerWindow),
            other => Err(LfError::UnknownMode(other.to_string())),
        }
    }
}

impl fmt::Display for LfMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Final => "final",
            Self::PerWindow => "per-window",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LfScore {
    pub value: f64,
    pub variant: LfVariant,
    pub mode: LfMode,
    pub source: MetricKind,
}

pub fn lf_map(s: &SimilarityScore, variant: LfVariant) -> LfScore {
    LfScore {
        value: variant.apply(s.value()),
        variant,
        mode: LfMode::Final,
        source: s.source_kind().clone(),
    }
}

/// Clamps each SSIM window to `[0, 1]`, maps it, and mean-pools.
pub fn lf_per_window(window_map: &[f64], variant: LfVariant) -> Result<LfScore, LfError> {
    if window_map.is_empty() {
        return Err(LfError::EmptyWindowMap);
    }
    let sum: f64 = window_map
        .iter()
        .map(|&w| variant.apply(w.clamp(0.0, 1.0)))
        .sum();
    Ok(LfScore {
        value: sum / window_map.len() as f64,
        variant,
        mode: LfMode::PerWindow,
        source: MetricKind::ssim(),
    })
}
