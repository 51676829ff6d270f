use std::fmt;

use super::StatsError;
use crate::image_io::{DatasetManifest, DatasetRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QualityLabel {
    Bad,
    Middle,
    Good,
}

impl QualityLabel {
    pub const ALL: [QualityLabel; 3] = [Self::Bad, Self::Middle, Self::Good];
}

impl fmt::Display for QualityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Bad => "bad",
            Self::Middle => "middle",
            Self::Good => "good",
        })
    }
}

/// MOS edges of the three quality groups. Intervals are half-open with the
/// upper edge belonging to the lower group:
/// bad `(floor, bad_upper]`, middle `(bad_upper, middle_upper]`,
/// good `(middle_upper, scale max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityBounds {
    /// Lowest MOS expected in the bad group; anything at or below it still
    /// lands in bad but is counted.
    pub floor: f64,
    pub bad_upper: f64,
    pub middle_upper: f64,
}

impl Default for QualityBounds {
    /// TID2013 edges on its 0-8 MOS scale.
    fn default() -> Self {
        Self {
            floor: 0.242,
            bad_upper: 3.94,
            middle_upper: 5.25,
        }
    }
}

impl QualityBounds {
    pub fn validate(&self, mos_scale_max: f64) -> Result<(), StatsError> {
        let ordered = 0.0 <= self.floor
            && self.floor < self.bad_upper
            && self.bad_upper < self.middle_upper
            && self.middle_upper < mos_scale_max;
        if ordered {
            Ok(())
        } else {
            Err(StatsError::InvalidBounds(format!(
                "need 0 <= {} < {} < {} < {mos_scale_max}",
                self.floor, self.bad_upper, self.middle_upper
            )))
        }
    }

    pub fn label_for(&self, mos: f64) -> QualityLabel {
        if mos <= self.bad_upper {
            QualityLabel::Bad
        } else if mos <= self.middle_upper {
            QualityLabel::Middle
        } else {
            QualityLabel::Good
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QualityGroup {
    pub label: QualityLabel,
    /// Exclusive lower edge (the bad group also keeps records at 0).
    pub lower: f64,
    /// Inclusive upper edge.
    pub upper: f64,
    pub members: Vec<DatasetRecord>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QualityGroups {
    pub bad: QualityGroup,
    pub middle: QualityGroup,
    pub good: QualityGroup,
    /// Records at or below `QualityBounds::floor`, assigned to bad.
    pub below_floor: usize,
}

impl QualityGroups {
    pub fn get(&self, label: QualityLabel) -> &QualityGroup {
        match label {
            QualityLabel::Bad => &self.bad,
            QualityLabel::Middle => &self.middle,
            QualityLabel::Good => &self.good,
        }
    }

    pub fn total(&self) -> usize {
        self.bad.members.len() + self.middle.members.len() + self.good.members.len()
    }
}

/// Splits a manifest into bad, middle and good MOS groups. Every record ends
/// up in exactly one group.
pub fn group_by_quality(
    manifest: &DatasetManifest,
    bounds: Option<QualityBounds>,
) -> Result<QualityGroups, StatsError> {
    let bounds = bounds.unwrap_or_default();
    bounds.validate(manifest.mos_scale_max)?;
    let group = |label, lower, upper| QualityGroup {
        label,
        lower,
        upper,
        members: Vec::new(),
    };
    let mut groups = QualityGroups {
        bad: group(QualityLabel::Bad, 0.0, bounds.bad_upper),
        middle: group(QualityLabel::Middle, bounds.bad_upper, bounds.middle_upper),
        good: group(
            QualityLabel::Good,
            bounds.middle_upper,
            manifest.mos_scale_max,
        ),
        below_floor: 0,
    };
    for record in &manifest.records {
        let target = match bounds.label_for(record.mos) {
            QualityLabel::Bad => {
                if record.mos <= bounds.floor {
                    groups.below_floor += 1;
                }
                &mut groups.bad
            }
            QualityLabel::Middle => &mut groups.middle,
            QualityLabel::Good => &mut groups.good,
        };
        target.members.push(record.clone());
    }
    if groups.below_floor > 0 {
        log::warn!(
            "{} records have mos <= {} and were assigned to the bad group",
            groups.below_floor,
            bounds.floor
        );
    }
    Ok(groups)
}
