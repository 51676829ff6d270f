//! Per-record scores for one metric over a dataset, and the parallel scorer
//! that produces them for native metrics.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::image_io::{load_image, DatasetManifest, LumaImage};
use crate::lf::{lf_per_window, LfChoice, LfMode, LfScore};
use crate::metrics::{
    gmsd, ms_ssim, normalize_direction, ssim, MetricError, MetricKind, MetricName, MetricScore,
    ScoreSet, SimilarityScore, SsimParams,
};

#[derive(Clone, Debug, PartialEq)]
pub struct PairScore {
    pub raw: f64,
    pub similarity: SimilarityScore,
    /// Per-window logistic score, present only for SSIM scored in
    /// per-window mode.
    pub window_lf: Option<LfScore>,
}

impl PairScore {
    /// Logistic value for this pair. Per-window mode uses the window-level
    /// score when one was computed with the same variant and falls back to
    /// mapping the final similarity otherwise.
    pub fn lf_value(&self, lf: LfChoice, mode: LfMode) -> f64 {
        match (lf, mode, &self.window_lf) {
            (LfChoice::Mapped(v), LfMode::PerWindow, Some(w)) if w.variant == v => w.value,
            _ => lf.apply(self.similarity.value()),
        }
    }
}

/// All scores of one metric, keyed by distorted id.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricScores {
    kind: MetricKind,
    entries: BTreeMap<String, PairScore>,
}

impl MetricScores {
    pub fn new(kind: MetricKind) -> Self {
        Self {
            kind,
            entries: BTreeMap::new(),
        }
    }

    /// Normalizes every ingested entry.
    pub fn from_score_set(set: &ScoreSet) -> Result<Self, MetricError> {
        let mut out = Self::new(set.kind().clone());
        for (id, &raw) in set.entries() {
            let similarity = normalize_direction(set.kind(), raw)?;
            out.entries.insert(
                id.clone(),
                PairScore {
                    raw,
                    similarity,
                    window_lf: None,
                },
            );
        }
        Ok(out)
    }

    pub fn insert(&mut self, distorted_id: impl Into<String>, score: PairScore) {
        self.entries.insert(distorted_id.into(), score);
    }

    pub fn kind(&self) -> &MetricKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        self.kind.label()
    }

    pub fn get(&self, distorted_id: &str) -> Option<&PairScore> {
        self.entries.get(distorted_id)
    }

    pub fn entries(&self) -> &BTreeMap<String, PairScore> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Computes one native metric on image pairs.
#[derive(Clone, Debug)]
pub struct NativeScorer {
    pub metric: MetricName,
    pub params: SsimParams,
    pub lf: LfChoice,
    pub mode: LfMode,
}

/// Outcome of scoring a whole manifest: the successful scores plus a
/// `(distorted_id, reason)` entry for every record that could not be scored.
#[derive(Debug)]
pub struct ManifestScores {
    pub scores: MetricScores,
    pub failures: Vec<(String, String)>,
}

impl NativeScorer {
    pub fn new(metric: MetricName) -> Result<Self, MetricError> {
        if !metric.is_native() {
            return Err(MetricError::InvalidArgument(format!(
                "`{metric}` is not a natively computed metric"
            )));
        }
        Ok(Self {
            metric,
            params: SsimParams::default(),
            lf: LfChoice::default(),
            mode: LfMode::Final,
        })
    }

    pub fn kind(&self) -> MetricKind {
        MetricKind::native(&self.metric).expect("constructor checked native")
    }

    pub fn raw(&self, reference: &LumaImage, distorted: &LumaImage) -> Result<f64, MetricError> {
        Ok(match self.metric {
            MetricName::Ssim => ssim(reference, distorted, &self.params)?.score,
            MetricName::MsSsim => ms_ssim(reference, distorted, &self.params)?.score,
            MetricName::Gmsd => gmsd(reference, distorted)?.score,
            MetricName::Ingested(_) => unreachable!("constructor rejects ingested metrics"),
        })
    }

    /// Scores a single pair, producing the raw value, its similarity and,
    /// for SSIM in per-window mode, the window-level logistic score.
    pub fn score(
        &self,
        reference: &LumaImage,
        distorted: &LumaImage,
        reference_id: &str,
        distorted_id: &str,
    ) -> Result<(MetricScore, PairScore), MetricError> {
        let per_window = matches!(
            (&self.metric, self.mode, self.lf),
            (MetricName::Ssim, LfMode::PerWindow, LfChoice::Mapped(_))
        );
        let (raw, window_lf) = if per_window {
            let out = ssim(reference, distorted, &self.params)?;
            let variant = self.lf.variant().expect("matched Mapped");
            let lf = lf_per_window(&out.window_map, variant).expect("valid ssim maps are nonempty");
            (out.score, Some(lf))
        } else {
            (self.raw(reference, distorted)?, None)
        };
        let metric_score = MetricScore::new(self.kind(), raw, reference_id, distorted_id)?;
        let pair = PairScore {
            raw: metric_score.value(),
            similarity: metric_score.similarity(),
            window_lf,
        };
        Ok((metric_score, pair))
    }

    /// Scores every record of a manifest in parallel. Images are resolved
    /// under the manifest root; each reference is decoded once.
    pub fn score_manifest(&self, manifest: &DatasetManifest) -> ManifestScores {
        let mut reference_ids: Vec<&str> = manifest
            .records
            .iter()
            .map(|r| r.reference_id.as_str())
            .collect();
        reference_ids.sort_unstable();
        reference_ids.dedup();
        let references: HashMap<&str, Result<Arc<LumaImage>, String>> = reference_ids
            .par_iter()
            .map(|&id| {
                let probe = manifest
                    .records
                    .iter()
                    .find(|r| r.reference_id == id)
                    .expect("id from records");
                let loaded = match manifest.reference_path(probe) {
                    Some(path) => load_image(&path).map(Arc::new).map_err(|e| e.to_string()),
                    None => Err(format!("reference image `{id}` not found")),
                };
                (id, loaded)
            })
            .collect();

        let results: Vec<(String, Result<PairScore, String>)> = manifest
            .records
            .par_iter()
            .map(|record| {
                let outcome = (|| {
                    let reference = references[record.reference_id.as_str()]
                        .as_ref()
                        .map_err(Clone::clone)?;
                    let path = manifest.distorted_path(record).ok_or_else(|| {
                        format!("distorted image `{}` not found", record.distorted_id)
                    })?;
                    let distorted = load_image(&path).map_err(|e| e.to_string())?;
                    self.score(
                        reference,
                        &distorted,
                        &record.reference_id,
                        &record.distorted_id,
                    )
                    .map(|(_, pair)| pair)
                    .map_err(|e| e.to_string())
                })();
                (record.distorted_id.clone(), outcome)
            })
            .collect();

        let mut scores = MetricScores::new(self.kind());
        let mut failures = Vec::new();
        for (id, outcome) in results {
            match outcome {
                Ok(pair) => scores.insert(id, pair),
                Err(reason) => failures.push((id, reason)),
            }
        }
        failures.sort();
        ManifestScores { scores, failures }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lf::LfVariant;
    use crate::metrics::{Direction, NativeRange};

    fn textured(phase: f64) -> LumaImage {
        LumaImage::from_fn(48, 40, |x, y| {
            128.0 + 80.0 * ((x as f64 * 0.3 + phase).sin() * (y as f64 * 0.2).cos())
        })
        .unwrap()
    }

    #[test]
    fn per_window_only_for_ssim() {
        let a = textured(0.0);
        let b = textured(0.7);
        let mut scorer = NativeScorer::new(MetricName::Ssim).unwrap();
        scorer.mode = LfMode::PerWindow;
        let (_, pair) = scorer.score(&a, &b, "r", "d").unwrap();
        let w = pair.window_lf.clone().unwrap();
        assert_eq!(w.mode, LfMode::PerWindow);
        let lf = LfChoice::Mapped(LfVariant::Eq1);
        assert_eq!(pair.lf_value(lf, LfMode::PerWindow), w.value);
        assert_eq!(
            pair.lf_value(lf, LfMode::Final),
            LfVariant::Eq1.apply(pair.similarity.value())
        );
        // other variants fall back to final-score mapping
        let eq2 = LfChoice::Mapped(LfVariant::Eq2);
        assert_eq!(
            pair.lf_value(eq2, LfMode::PerWindow),
            LfVariant::Eq2.apply(pair.similarity.value())
        );

        let mut g = NativeScorer::new(MetricName::Gmsd).unwrap();
        g.mode = LfMode::PerWindow;
        let (score, pair) = g.score(&a, &b, "r", "d").unwrap();
        assert!(pair.window_lf.is_none());
        assert_eq!(pair.similarity.value(), 1.0 - score.value());
    }

    #[test]
    fn ingested_metrics_are_not_native() {
        assert!(NativeScorer::new(MetricName::Ingested("vsi".into())).is_err());
    }

    #[test]
    fn from_score_set_normalizes() {
        let kind = MetricKind::ingested(
            "vmaf",
            Direction::SimilarityHigherBetter,
            NativeRange::new(0.0, 100.0).unwrap(),
        )
        .unwrap();
        let set = ScoreSet::parse_str("distorted_id,score\nb,50\na,100\n", kind).unwrap();
        let scores = MetricScores::from_score_set(&set).unwrap();
        assert_eq!(scores.entries().keys().collect::<Vec<_>>(), ["a", "b"]);
        assert_eq!(scores.get("b").unwrap().similarity.value(), 0.5);
        assert_eq!(scores.get("a").unwrap().raw, 100.0);
    }
}
