use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use lfiqa::{Direction, LfChoice, LfMode, ManifestFormat, NativeRange};

#[derive(Debug, Parser)]
#[command(
    name = "lfiqa",
    version,
    about = "Full-reference image quality scoring and MOS correlation analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a single reference/distorted image pair.
    Score(ScoreArgs),
    /// Correlate metric scores with MOS over a dataset and write a report CSV.
    Evaluate(EvaluateArgs),
    /// Compare how well MOS, raw scores and logistic scores separate quality groups.
    Precision(PrecisionArgs),
    /// Export MOS against raw and logistic scores for plotting.
    Scatter(ScatterArgs),
}

#[derive(Debug, Args)]
pub struct LfArgs {
    /// Logistic variant: eq1, eq2, eq3 or none.
    #[arg(long, default_value = "eq1")]
    pub lf: LfChoice,
    /// Apply the logistic map to the pooled score or to every SSIM window.
    #[arg(long, default_value = "final")]
    pub lf_mode: LfMode,
    /// Disable automatic downsampling of large images for SSIM.
    #[arg(long)]
    pub no_downsample: bool,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// ssim, ms_ssim or gmsd.
    #[arg(long)]
    pub metric: String,
    #[command(flatten)]
    pub lf: LfArgs,
    pub reference: PathBuf,
    pub distorted: PathBuf,
}

#[derive(Debug, Args)]
pub struct DatasetArgs {
    /// Subjective score manifest.
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long, default_value = "tid-mos-names")]
    pub format: ManifestFormat,
    /// Upper end of the MOS scale. Defaults to 8 for tid-mos-names.
    #[arg(long)]
    pub mos_scale: Option<f64>,
    /// Image root, if not the manifest's directory.
    #[arg(long)]
    pub root: Option<PathBuf>,
    /// Precomputed scores as `label:direction:min:max:path`. Repeatable.
    #[arg(long = "ingest")]
    pub ingest: Vec<IngestSpec>,
    #[command(flatten)]
    pub lf: LfArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// Comma-separated metric list. Ingested labels may be named too.
    #[arg(long, value_delimiter = ',')]
    pub metrics: Vec<String>,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct PrecisionArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// Native metric name or the label of an ingested score file.
    #[arg(long)]
    pub metric: String,
    /// Target MOS for the bad, middle and good groups.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "2,4,6")]
    pub targets: Vec<f64>,
    /// Probe size per group.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// File with one distorted image name per line, used instead of selection.
    #[arg(long)]
    pub probe_list: Option<PathBuf>,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    #[arg(long, value_delimiter = ',')]
    pub metrics: Vec<String>,
    #[arg(long)]
    pub output_dir: PathBuf,
    /// Also render each table as an SVG scatter plot.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IngestSpec {
    pub label: String,
    pub direction: Direction,
    pub range: NativeRange,
    pub path: PathBuf,
}

impl FromStr for IngestSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // the path is last so that it may itself contain ':'
        let parts: Vec<&str> = s.splitn(5, ':').collect();
        let [label, direction, lo, hi, path] = parts[..] else {
            return Err(format!("expected label:direction:min:max:path, got `{s}`"));
        };
        let number = |v: &str| {
            v.parse::<f64>()
                .map_err(|e| format!("bad range bound `{v}`: {e}"))
        };
        Ok(Self {
            label: label.to_string(),
            direction: direction
                .parse()
                .map_err(|e: lfiqa::metrics::MetricError| e.to_string())?,
            range: NativeRange::new(number(lo)?, number(hi)?).map_err(|e| e.to_string())?,
            path: PathBuf::from(path),
        })
    }
}
