use super::{fmt6, plcc, StatsError};
use crate::image_io::DatasetManifest;
use crate::lf::{LfChoice, LfMode};
use crate::scoring::MetricScores;

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub metric: String,
    pub plcc_raw: f64,
    pub plcc_lf: f64,
    pub n_pairs: usize,
    /// Manifest records without a score for this metric.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricFailure {
    pub metric: String,
    pub reason: StatsError,
}

/// Per-metric correlation of MOS with raw and logistic-mapped similarity.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationReport {
    pub dataset: String,
    pub lf: LfChoice,
    pub mode: LfMode,
    pub rows: Vec<ReportRow>,
    pub failures: Vec<MetricFailure>,
}

impl EvaluationReport {
    /// CSV with header `metric,plcc_raw,plcc_lf,n_pairs`, one row per
    /// successfully evaluated metric in input order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,plcc_raw,plcc_lf,n_pairs\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.metric,
                fmt6(r.plcc_raw),
                fmt6(r.plcc_lf),
                r.n_pairs
            ));
        }
        out
    }

    pub fn row(&self, metric: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.metric == metric)
    }
}

/// Correlates MOS with every metric's similarity and logistic score.
///
/// Records are visited in ascending distorted-id order. A record missing a
/// score is skipped for that metric only. A metric whose correlation is
/// undefined (fewer than 2 pairs, constant series) is listed in `failures`
/// instead of aborting the report.
pub fn build_evaluation_report(
    dataset: impl Into<String>,
    manifest: &DatasetManifest,
    metrics: &[MetricScores],
    lf: LfChoice,
    mode: LfMode,
) -> EvaluationReport {
    let mut records: Vec<_> = manifest.records.iter().collect();
    records.sort_by(|a, b| a.distorted_id.cmp(&b.distorted_id));

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for scores in metrics {
        let mut mos = Vec::with_capacity(records.len());
        let mut raw = Vec::with_capacity(records.len());
        let mut mapped = Vec::with_capacity(records.len());
        for record in &records {
            if let Some(pair) = scores.get(&record.distorted_id) {
                mos.push(record.mos);
                raw.push(pair.similarity.value());
                mapped.push(pair.lf_value(lf, mode));
            }
        }
        let skipped = records.len() - mos.len();
        if skipped > 0 {
            log::info!(
                "{}: {skipped} of {} records have no score",
                scores.label(),
                records.len()
            );
        }
        let outcome = plcc(&mos, &raw).and_then(|r| Ok((r, plcc(&mos, &mapped)?)));
        match outcome {
            Ok((plcc_raw, plcc_lf)) => rows.push(ReportRow {
                metric: scores.label().to_string(),
                plcc_raw,
                plcc_lf,
                n_pairs: mos.len(),
                skipped,
            }),
            Err(reason) => failures.push(MetricFailure {
                metric: scores.label().to_string(),
                reason,
            }),
        }
    }
    EvaluationReport {
        dataset: dataset.into(),
        lf,
        mode,
        rows,
        failures,
    }
}
