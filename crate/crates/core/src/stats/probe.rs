//! Fixed-quality probe sets and the discrimination-resolution comparison
//! between adjacent quality groups.

use super::grouping::{QualityGroup, QualityLabel};
use super::{fmt6, StatsError};
use crate::image_io::DatasetRecord;
use crate::lf::{LfChoice, LfMode};
use crate::metrics::SimilarityScore;
use crate::scoring::MetricScores;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeMember {
    pub record: DatasetRecord,
    pub similarity: SimilarityScore,
    pub lf: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeAverages {
    pub mos: f64,
    pub raw: f64,
    pub lf: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSet {
    pub label: QualityLabel,
    pub target_mos: f64,
    pub members: Vec<ProbeMember>,
    pub averages: ProbeAverages,
}

impl ProbeSet {
    fn new(
        label: QualityLabel,
        target_mos: f64,
        members: Vec<ProbeMember>,
    ) -> Result<Self, StatsError> {
        if members.is_empty() {
            return Err(StatsError::EmptyProbe);
        }
        let n = members.len() as f64;
        let averages = ProbeAverages {
            mos: members.iter().map(|m| m.record.mos).sum::<f64>() / n,
            raw: members.iter().map(|m| m.similarity.value()).sum::<f64>() / n,
            lf: members.iter().map(|m| m.lf).sum::<f64>() / n,
        };
        Ok(Self {
            label,
            target_mos,
            members,
            averages,
        })
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }
}

fn member(
    record: &DatasetRecord,
    scores: &MetricScores,
    lf: LfChoice,
    mode: LfMode,
) -> Option<ProbeMember> {
    let pair = scores.get(&record.distorted_id)?;
    Some(ProbeMember {
        record: record.clone(),
        similarity: pair.similarity.clone(),
        lf: pair.lf_value(lf, mode),
    })
}

/// Picks the `n` scored members of `group` whose MOS is nearest to
/// `target_mos`, breaking ties by ascending distorted id.
pub fn select_probe_set(
    group: &QualityGroup,
    target_mos: f64,
    n: usize,
    scores: &MetricScores,
    lf: LfChoice,
    mode: LfMode,
) -> Result<ProbeSet, StatsError> {
    if n == 0 {
        return Err(StatsError::EmptyProbe);
    }
    let mut candidates: Vec<ProbeMember> = group
        .members
        .iter()
        .filter_map(|r| member(r, scores, lf, mode))
        .collect();
    if candidates.len() < n {
        return Err(StatsError::InsufficientMembers {
            group: group.label.to_string(),
            needed: n,
            available: candidates.len(),
        });
    }
    candidates.sort_by(|a, b| {
        let da = (a.record.mos - target_mos).abs();
        let db = (b.record.mos - target_mos).abs();
        da.total_cmp(&db)
            .then_with(|| a.record.distorted_id.cmp(&b.record.distorted_id))
    });
    candidates.truncate(n);
    ProbeSet::new(group.label, target_mos, candidates)
}

/// Builds a probe set from an explicit list of distorted ids, all of which
/// must be members of `group` and carry a score.
pub fn probe_set_from_ids(
    group: &QualityGroup,
    target_mos: f64,
    ids: &[String],
    scores: &MetricScores,
    lf: LfChoice,
    mode: LfMode,
) -> Result<ProbeSet, StatsError> {
    let members = ids
        .iter()
        .map(|id| {
            group
                .members
                .iter()
                .find(|r| &r.distorted_id == id)
                .and_then(|r| member(r, scores, lf, mode))
                .ok_or_else(|| StatsError::UnknownProbeId(id.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ProbeSet::new(group.label, target_mos, members)
}

/// Difference between two group means as a fraction of the scale range.
pub fn discrimination_resolution(
    mean_a: f64,
    mean_b: f64,
    scale_range: f64,
) -> Result<f64, StatsError> {
    if !(scale_range > 0.0 && scale_range.is_finite()) {
        return Err(StatsError::NonPositiveScale(scale_range));
    }
    Ok((mean_a - mean_b).abs() / scale_range)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionRow {
    pub pair: String,
    pub mos_resolution: f64,
    pub raw_resolution: f64,
    pub lf_resolution: f64,
}

/// Resolutions for the good/middle and middle/bad probe pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionReport {
    pub rows: Vec<PrecisionRow>,
}

impl PrecisionReport {
    /// MOS differences are divided by `mos_scale_max`; raw and logistic
    /// differences by 1, the width of the similarity domain.
    pub fn from_probes(
        good: &ProbeSet,
        middle: &ProbeSet,
        bad: &ProbeSet,
        mos_scale_max: f64,
    ) -> Result<Self, StatsError> {
        let row = |hi: &ProbeSet, lo: &ProbeSet| -> Result<PrecisionRow, StatsError> {
            Ok(PrecisionRow {
                pair: format!("{}-{}", hi.label, lo.label),
                mos_resolution: discrimination_resolution(
                    hi.averages.mos,
                    lo.averages.mos,
                    mos_scale_max,
                )?,
                raw_resolution: discrimination_resolution(hi.averages.raw, lo.averages.raw, 1.0)?,
                lf_resolution: discrimination_resolution(hi.averages.lf, lo.averages.lf, 1.0)?,
            })
        };
        Ok(Self {
            rows: vec![row(good, middle)?, row(middle, bad)?],
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("pair,mos_resolution,raw_resolution,lf_resolution\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.pair,
                fmt6(r.mos_resolution),
                fmt6(r.raw_resolution),
                fmt6(r.lf_resolution)
            ));
        }
        out
    }
}

/// Table-style listing of probe members: `group,distorted_id,mos,raw,lf`.
pub fn probes_csv(probes: &[&ProbeSet]) -> String {
    let mut out = String::from("group,distorted_id,mos,raw,lf\n");
    for p in probes {
        for m in &p.members {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                p.label,
                m.record.distorted_id,
                fmt6(m.record.mos),
                fmt6(m.similarity.value()),
                fmt6(m.lf)
            ));
        }
        out.push_str(&format!(
            "{},avg,{},{},{}\n",
            p.label,
            fmt6(p.averages.mos),
            fmt6(p.averages.raw),
            fmt6(p.averages.lf)
        ));
    }
    out
}
