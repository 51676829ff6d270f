//! Full-reference image quality assessment with logistic remapping of the
//! saturated high-quality end of similarity scores.
//!
//! The crate is split along the evaluation pipeline:
//!
//! - [`image_io`] decodes BMP/PNG files into luma planes and parses dataset
//!   manifests (image ids plus mean opinion scores).
//! - [`metrics`] computes SSIM, MS-SSIM and GMSD natively, ingests precomputed
//!   scores for any other metric, and normalizes every score to a similarity
//!   in `[0, 1]`.
//! - [`lf`] implements the logistic remapping family applied either to the
//!   final pooled score or to every SSIM window before pooling.
//! - [`stats`] holds Pearson correlation, MOS quality grouping, probe-set
//!   discrimination analysis, report assembly and scatter export.
//! - [`scoring`] scores whole manifests with native metrics in parallel.

pub mod image_io;
pub mod lf;
pub mod metrics;
pub mod scoring;
pub mod stats;

pub use image_io::{
    load_image, parse_manifest, DatasetManifest, DatasetRecord, LumaImage, ManifestFormat,
};
pub use lf::{lf_map, lf_per_window, LfChoice, LfMode, LfScore, LfVariant};
pub use metrics::{
    gmsd, ingest_scores, ms_ssim, normalize_direction, ssim, Direction, MetricKind, MetricName,
    MetricScore, NativeRange, ScoreSet, SimilarityScore, SsimParams,
};
pub use stats::{discrimination_resolution, plcc};
