//! Correlation, MOS quality grouping, discrimination analysis, reports and
//! scatter export.

mod grouping;
mod plcc;
mod probe;
mod report;
mod scatter;

pub use grouping::{group_by_quality, QualityBounds, QualityGroup, QualityGroups, QualityLabel};
pub use plcc::plcc;
pub use probe::{
    discrimination_resolution, probe_set_from_ids, probes_csv, select_probe_set, PrecisionReport,
    PrecisionRow, ProbeAverages, ProbeMember, ProbeSet,
};
pub use report::{build_evaluation_report, EvaluationReport, MetricFailure, ReportRow};
pub use scatter::{scatter_export, scatter_svg, ScatterRow, ScatterTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least 2 paired values, got {0}")]
    TooFewValues(usize),
    #[error("correlation undefined: {0} series is constant")]
    ConstantSeries(&'static str),
    #[error("non-finite value in series")]
    NonFinite,
    #[error("scale range must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("invalid quality bounds: {0}")]
    InvalidBounds(String),
    #[error("{group} group has {available} scored members, {needed} requested")]
    InsufficientMembers {
        group: String,
        needed: usize,
        available: usize,
    },
    #[error("probe id `{0}` is not in the manifest or has no score")]
    UnknownProbeId(String),
    #[error("probe set must not be empty")]
    EmptyProbe,
}

/// Fixed six-decimal rendering used by every report file. Values that round
/// to zero print without a sign.
pub fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}
