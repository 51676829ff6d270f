use std::fmt::Write as _;

use super::fmt6;
use crate::image_io::DatasetManifest;
use crate::lf::{LfChoice, LfMode};
use crate::scoring::MetricScores;

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterRow {
    pub distorted_id: String,
    pub objective_score: f64,
    pub mos: f64,
}

/// MOS against one metric's similarity, either raw or logistic-mapped.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterTable {
    pub metric: String,
    /// `None` for the raw similarity export.
    pub lf: Option<LfChoice>,
    pub mos_scale_max: f64,
    pub rows: Vec<ScatterRow>,
}

impl ScatterTable {
    /// Name fragment such as `ssim_raw` or `ssim_lf-eq1`.
    pub fn stem(&self) -> String {
        match self.lf {
            None => format!("{}_raw", self.metric),
            Some(lf) => format!("{}_lf-{lf}", self.metric),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("distorted_id,objective_score,mos\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{}",
                csv_field(&r.distorted_id),
                fmt6(r.objective_score),
                fmt6(r.mos)
            );
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Rows for every scored manifest record, sorted by distorted id. With
/// `lf = None` the objective score is the normalized similarity.
pub fn scatter_export(
    manifest: &DatasetManifest,
    scores: &MetricScores,
    lf: Option<(LfChoice, LfMode)>,
) -> ScatterTable {
    let mut rows: Vec<ScatterRow> = manifest
        .records
        .iter()
        .filter_map(|record| {
            let pair = scores.get(&record.distorted_id)?;
            let objective_score = match lf {
                None => pair.similarity.value(),
                Some((choice, mode)) => pair.lf_value(choice, mode),
            };
            Some(ScatterRow {
                distorted_id: record.distorted_id.clone(),
                objective_score,
                mos: record.mos,
            })
        })
        .collect();
    rows.sort_by(|a, b| a.distorted_id.cmp(&b.distorted_id));
    ScatterTable {
        metric: scores.label().to_string(),
        lf: lf.map(|(choice, _)| choice),
        mos_scale_max: manifest.mos_scale_max,
        rows,
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Minimal SVG scatter plot: objective score on `[0, 1]` horizontally, MOS
/// on `[0, scale max]` vertically.
pub fn scatter_svg(table: &ScatterTable) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 50.0;
    let plot_w = W - LEFT - RIGHT;
    let plot_h = H - TOP - BOTTOM;
    let sx = |v: f64| LEFT + v.clamp(0.0, 1.0) * plot_w;
    let sy = |m: f64| TOP + plot_h * (1.0 - (m / table.mos_scale_max).clamp(0.0, 1.0));
    let x_label = match table.lf {
        None => table.metric.clone(),
        Some(lf) => format!("LF-{} ({lf})", table.metric),
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let v = f64::from(i) / 4.0;
        let x = sx(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{v:.2}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 18.0
        );
        let m = table.mos_scale_max * v;
        let y = sy(m);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{m:.1}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        H - 12.0,
        xml_escape(&x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{:.2}" text-anchor="middle" transform="rotate(-90 15 {:.2})">MOS</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    let _ = writeln!(svg, r#"<g fill="steelblue" fill-opacity="0.6">"#);
    for r in &table.rows {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2"/>"#,
            sx(r.objective_score),
            sy(r.mos)
        );
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_io::ManifestFormat;
    use crate::lf::LfVariant;
    use crate::metrics::{Direction, MetricKind, NativeRange, ScoreSet};

    fn fixture() -> (DatasetManifest, MetricScores) {
        let m = DatasetManifest::parse_str(
            "6.1 i02_01_1.bmp\n3.2 i01_01_1.bmp\n5.0 i03_01_1.bmp\n",
            ManifestFormat::TidMosNames,
            8.0,
            "",
        )
        .unwrap();
        let kind = MetricKind::ingested(
            "vsi",
            Direction::SimilarityHigherBetter,
            NativeRange::new(0.0, 1.0).unwrap(),
        )
        .unwrap();
        let set = ScoreSet::parse_str(
            "distorted_id,score\ni01_01_1.bmp,0.9\ni02_01_1.bmp,0.99\ni03_01_1.bmp,0.95\n",
            kind,
        )
        .unwrap();
        (m, MetricScores::from_score_set(&set).unwrap())
    }

    #[test]
    fn raw_and_lf_share_rows() {
        let (m, s) = fixture();
        let raw = scatter_export(&m, &s, None);
        let lf = scatter_export(
            &m,
            &s,
            Some((LfChoice::Mapped(LfVariant::Eq1), LfMode::Final)),
        );
        assert_eq!(raw.rows.len(), 3);
        assert_eq!(raw.rows[0].distorted_id, "i01_01_1.bmp");
        for (a, b) in raw.rows.iter().zip(&lf.rows) {
            assert_eq!(a.distorted_id, b.distorted_id);
            assert_eq!(a.mos, b.mos);
            assert_eq!(b.objective_score, LfVariant::Eq1.apply(a.objective_score));
        }
        assert_eq!(raw.stem(), "vsi_raw");
        assert_eq!(lf.stem(), "vsi_lf-eq1");
        assert_eq!(
            raw.to_csv(),
            "distorted_id,objective_score,mos\ni01_01_1.bmp,0.900000,3.200000\n\
             i02_01_1.bmp,0.990000,6.100000\ni03_01_1.bmp,0.950000,5.000000\n"
        );
    }

    #[test]
    fn svg_has_one_point_per_row() {
        let (m, s) = fixture();
        let svg = scatter_svg(&scatter_export(&m, &s, None));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains(">MOS</text>"));
        assert!(svg.contains(">vsi</text>"));
    }

    #[test]
    fn csv_quotes_awkward_ids() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
