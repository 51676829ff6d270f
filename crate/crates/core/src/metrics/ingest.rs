use std::collections::BTreeMap;
use std::path::Path;

use super::{Direction, MetricError, MetricKind, NativeRange};

/// Precomputed per-image scores for a metric that is not computed natively.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreSet {
    kind: MetricKind,
    entries: BTreeMap<String, f64>,
}

impl ScoreSet {
    pub fn kind(&self) -> &MetricKind {
        &self.kind
    }

    pub fn metric_label(&self) -> &str {
        self.kind.label()
    }

    pub fn direction(&self) -> Direction {
        self.kind.direction()
    }

    pub fn native_range(&self) -> NativeRange {
        self.kind.native_range()
    }

    pub fn get(&self, distorted_id: &str) -> Option<f64> {
        self.entries.get(distorted_id).copied()
    }

    /// Entries in ascending `distorted_id` order.
    pub fn entries(&self) -> &BTreeMap<String, f64> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses CSV text with header `distorted_id,score`.
    pub fn parse_str(text: &str, kind: MetricKind) -> Result<Self, MetricError> {
        let range = kind.native_range();
        let mut entries = BTreeMap::new();
        if text.trim().is_empty() {
            return Err(MetricError::Malformed {
                line: 1,
                message: "missing header `distorted_id,score`".into(),
            });
        }
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| MetricError::Malformed {
            line: 1,
            message: e.to_string(),
        })?;
        if header.iter().collect::<Vec<_>>() != ["distorted_id", "score"] {
            return Err(MetricError::Malformed {
                line: 1,
                message: format!(
                    "expected header `distorted_id,score`, got `{}`",
                    header.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }
        for row in reader.records() {
            let row = row.map_err(|e| MetricError::Malformed {
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })?;
            let line = row.position().map_or(0, |p| p.line());
            if row.iter().all(str::is_empty) {
                continue;
            }
            let id = row[0].to_string();
            if id.is_empty() {
                return Err(MetricError::Malformed {
                    line,
                    message: "empty distorted_id".into(),
                });
            }
            let score: f64 = row[1].parse().map_err(|_| MetricError::Malformed {
                line,
                message: format!("cannot parse score `{}`", &row[1]),
            })?;
            if !range.contains(score) {
                return Err(MetricError::ScoreOutOfRange {
                    line,
                    id,
                    score,
                    range,
                });
            }
            if entries.insert(id.clone(), score).is_some() {
                return Err(MetricError::DuplicateId { line, id });
            }
        }
        Ok(Self { kind, entries })
    }
}

/// Reads a score CSV (`distorted_id,score`) for an externally computed
/// metric. Ids are opaque; any score outside `native_range` is rejected with
/// its line number.
pub fn ingest_scores(
    path: impl AsRef<Path>,
    metric_label: &str,
    direction: Direction,
    native_range: NativeRange,
) -> Result<ScoreSet, MetricError> {
    let path = path.as_ref();
    let kind = MetricKind::ingested(metric_label, direction, native_range)?;
    let text = std::fs::read_to_string(path).map_err(|source| MetricError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ScoreSet::parse_str(&text, kind)
}
