//! Native full-reference metrics, score ingestion and direction
//! normalization.

mod filter;
mod gmsd;
mod ingest;
mod kind;
mod ms_ssim;
mod normalize;
mod ssim;

use std::path::PathBuf;

pub use gmsd::{gmsd, GmsdOutput, GMSD_STABILIZER};
pub use ingest::{ingest_scores, ScoreSet};
pub use kind::{Direction, MetricKind, MetricName, MetricScore, NativeRange, SimilarityScore};
pub use ms_ssim::{ms_ssim, MsSsimOutput, MS_SSIM_SCALES, MS_SSIM_WEIGHTS};
pub use normalize::normalize_direction;
pub use ssim::{ssim, SsimOutput, SsimParams};

#[derive(Debug, thiserror::Error)]
pub enum MetricError {
    #[error("image dimensions differ: {reference:?} vs {distorted:?}")]
    DimensionMismatch {
        reference: (usize, usize),
        distorted: (usize, usize),
    },
    #[error("image {width}x{height} is too small: {requirement}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        requirement: String,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{label} value {value} outside {range}")]
    ValueOutOfRange {
        label: String,
        value: f64,
        range: NativeRange,
    },
    #[error("cannot read score file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("line {line}: score {score} for `{id}` outside {range}")]
    ScoreOutOfRange {
        line: u64,
        id: String,
        score: f64,
        range: NativeRange,
    },
    #[error("line {line}: duplicate distorted id `{id}`")]
    DuplicateId { line: u64, id: String },
}

pub(crate) fn check_same_dimensions(
    reference: &crate::LumaImage,
    distorted: &crate::LumaImage,
) -> Result<(), MetricError> {
    if reference.dimensions() != distorted.dimensions() {
        return Err(MetricError::DimensionMismatch {
            reference: reference.dimensions(),
            distorted: distorted.dimensions(),
        });
    }
    Ok(())
}
