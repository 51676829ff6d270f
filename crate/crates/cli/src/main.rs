mod args;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use lfiqa::scoring::{MetricScores, NativeScorer};
use lfiqa::stats::{
    build_evaluation_report, fmt6, group_by_quality, probe_set_from_ids, probes_csv,
    scatter_export, scatter_svg, select_probe_set, PrecisionReport, ProbeSet, QualityLabel,
};
use lfiqa::{
    ingest_scores, load_image, parse_manifest, DatasetManifest, LfChoice, ManifestFormat,
    MetricName,
};

use args::{
    Cli, Command, DatasetArgs, EvaluateArgs, LfArgs, PrecisionArgs, ScatterArgs, ScoreArgs,
};

fn usage_error(message: impl std::fmt::Display) -> ! {
    Cli::command()
        .error(ErrorKind::InvalidValue, message)
        .exit()
}

fn native_metric(name: &str) -> Result<MetricName> {
    MetricName::native(name)
        .with_context(|| format!("unknown metric `{name}` (expected ssim, ms_ssim or gmsd)"))
}

fn scorer(metric: MetricName, lf: &LfArgs) -> Result<NativeScorer> {
    let mut scorer = NativeScorer::new(metric)?;
    scorer.params.auto_downsample = !lf.no_downsample;
    scorer.lf = lf.lf;
    scorer.mode = lf.lf_mode;
    Ok(scorer)
}

fn write_output(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

fn cmd_score(args: &ScoreArgs) -> Result<()> {
    let scorer = scorer(native_metric(&args.metric)?, &args.lf)?;
    let reference =
        load_image(&args.reference).with_context(|| args.reference.display().to_string())?;
    let distorted =
        load_image(&args.distorted).with_context(|| args.distorted.display().to_string())?;
    let id = |p: &Path| {
        p.file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default()
    };
    let (score, pair) = scorer.score(
        &reference,
        &distorted,
        &id(&args.reference),
        &id(&args.distorted),
    )?;
    println!(
        "metric={} raw={} similarity={} lf={}",
        score.kind().label(),
        fmt6(pair.raw),
        fmt6(pair.similarity.value()),
        fmt6(pair.lf_value(args.lf.lf, args.lf.lf_mode))
    );
    Ok(())
}

fn load_manifest(args: &DatasetArgs) -> Result<DatasetManifest> {
    let scale = match (args.mos_scale, args.format) {
        (Some(scale), _) => scale,
        (None, ManifestFormat::TidMosNames) => 8.0,
        (None, ManifestFormat::GenericCsv) => {
            usage_error("--mos-scale is required for generic-csv manifests")
        }
    };
    let manifest = parse_manifest(&args.manifest, args.format, scale)?;
    log::info!("{}: {} records", args.manifest.display(), manifest.len());
    Ok(match &args.root {
        Some(root) => manifest.with_root(root),
        None => manifest,
    })
}

/// Native metrics named in `requested` followed by every ingested score
/// file. Naming an ingested label in `requested` is allowed and changes
/// nothing.
fn collect_scores(
    args: &DatasetArgs,
    requested: &[String],
    manifest: &DatasetManifest,
) -> Result<Vec<MetricScores>> {
    let mut natives = Vec::new();
    for name in requested.iter().map(|m| m.trim()).filter(|m| !m.is_empty()) {
        if args.ingest.iter().any(|spec| spec.label == name) {
            continue;
        }
        let metric = native_metric(name)?;
        if !natives.contains(&metric) {
            natives.push(metric);
        }
    }
    if natives.is_empty() && args.ingest.is_empty() {
        usage_error("no metrics selected (use --metrics and/or --ingest)");
    }

    let mut all = Vec::new();
    for metric in natives {
        let label = metric.label().to_string();
        let out = scorer(metric, &args.lf)?.score_manifest(manifest);
        for (id, reason) in &out.failures {
            log::warn!("{label}: skipping {id}: {reason}");
        }
        log::info!(
            "{label}: scored {} of {} records",
            out.scores.len(),
            manifest.len()
        );
        all.push(out.scores);
    }
    for spec in &args.ingest {
        let set = ingest_scores(&spec.path, &spec.label, spec.direction, spec.range)
            .with_context(|| format!("ingesting {}", spec.path.display()))?;
        let unmatched = set
            .entries()
            .keys()
            .filter(|id| manifest.get(id).is_none())
            .count();
        if unmatched > 0 {
            log::warn!(
                "{}: {unmatched} scored ids are not in the manifest",
                spec.label
            );
        }
        all.push(MetricScores::from_score_set(&set)?);
    }
    Ok(all)
}

fn dataset_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<()> {
    if args.metrics.iter().all(|m| m.trim().is_empty()) && args.dataset.ingest.is_empty() {
        usage_error("--metrics must name at least one metric");
    }
    let manifest = load_manifest(&args.dataset)?;
    let scores = collect_scores(&args.dataset, &args.metrics, &manifest)?;
    let report = build_evaluation_report(
        dataset_label(&args.dataset.manifest),
        &manifest,
        &scores,
        args.dataset.lf.lf,
        args.dataset.lf.lf_mode,
    );
    for failure in &report.failures {
        log::error!("{}: no correlation: {}", failure.metric, failure.reason);
    }
    for row in &report.rows {
        log::info!(
            "{}: plcc_raw={} plcc_lf={} over {} pairs ({} skipped)",
            row.metric,
            fmt6(row.plcc_raw),
            fmt6(row.plcc_lf),
            row.n_pairs,
            row.skipped
        );
    }
    write_output(&args.output, &report.to_csv())
}

fn read_probe_list(path: &Path) -> Result<Vec<String>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

fn cmd_precision(args: &PrecisionArgs) -> Result<()> {
    if args.n == 0 {
        usage_error("--n must be at least 1");
    }
    let &[bad_target, middle_target, good_target] = &args.targets[..] else {
        usage_error("--targets takes three values: bad,middle,good");
    };
    let manifest = load_manifest(&args.dataset)?;
    let scores = collect_scores(&args.dataset, std::slice::from_ref(&args.metric), &manifest)?;
    let wanted = MetricName::native(&args.metric)
        .map(|m| m.label().to_string())
        .unwrap_or(args.metric.clone());
    let scores = scores
        .into_iter()
        .find(|s| s.label() == wanted)
        .context("selected metric was not scored")?;

    let groups = group_by_quality(&manifest, None)?;
    if groups.below_floor > 0 {
        log::warn!(
            "{} records at or below the MOS floor were placed in the bad group",
            groups.below_floor
        );
    }
    let (lf, mode) = (args.dataset.lf.lf, args.dataset.lf.lf_mode);
    let targets = [
        (QualityLabel::Good, good_target),
        (QualityLabel::Middle, middle_target),
        (QualityLabel::Bad, bad_target),
    ];
    let probes: Vec<ProbeSet> = match &args.probe_list {
        Some(path) => {
            let listed = read_probe_list(path)?;
            // each listed image joins the probe of the group its MOS falls in
            let mut by_group: [Vec<String>; 3] = Default::default();
            for id in listed {
                let slot = targets
                    .iter()
                    .position(|(label, _)| {
                        groups
                            .get(*label)
                            .members
                            .iter()
                            .any(|r| r.distorted_id == id)
                    })
                    .with_context(|| format!("probe `{id}` is not in the manifest"))?;
                by_group[slot].push(id);
            }
            targets
                .iter()
                .zip(&by_group)
                .map(|(&(label, target), ids)| {
                    if ids.is_empty() {
                        bail!("probe list has no {label} images");
                    }
                    Ok(probe_set_from_ids(
                        groups.get(label),
                        target,
                        ids,
                        &scores,
                        lf,
                        mode,
                    )?)
                })
                .collect::<Result<_>>()?
        }
        None => targets
            .iter()
            .map(|&(label, target)| {
                select_probe_set(groups.get(label), target, args.n, &scores, lf, mode)
                    .with_context(|| format!("selecting {label} probes around MOS {target}"))
            })
            .collect::<Result<_>>()?,
    };

    let report =
        PrecisionReport::from_probes(&probes[0], &probes[1], &probes[2], manifest.mos_scale_max)?;
    let listing = probes_csv(&probes.iter().collect::<Vec<_>>());
    eprint!("{listing}");
    eprint!("{}", report.to_csv());

    let stem = args
        .output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let sidecar = args.output.with_file_name(format!("{stem}_probes.csv"));
    write_output(&args.output, &report.to_csv())?;
    write_output(&sidecar, &listing)
}

fn cmd_scatter(args: &ScatterArgs) -> Result<()> {
    if args.svg
        && args.metrics.iter().all(|m| m.trim().is_empty())
        && args.dataset.ingest.is_empty()
    {
        usage_error("--svg needs at least one selected metric");
    }
    let manifest = load_manifest(&args.dataset)?;
    let scores = collect_scores(&args.dataset, &args.metrics, &manifest)?;
    let lf = match args.dataset.lf.lf {
        LfChoice::Identity => None,
        choice => Some((choice, args.dataset.lf.lf_mode)),
    };

    let mut outputs: Vec<(PathBuf, String)> = Vec::new();
    for metric in &scores {
        let selections = if lf.is_some() {
            vec![None, lf]
        } else {
            vec![None]
        };
        for selection in selections {
            let table = scatter_export(&manifest, metric, selection);
            let base = args.output_dir.join(table.stem());
            outputs.push((base.with_extension("csv"), table.to_csv()));
            if args.svg {
                outputs.push((base.with_extension("svg"), scatter_svg(&table)));
            }
        }
    }
    for (path, contents) in &outputs {
        write_output(path, contents)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Score(args) => cmd_score(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Precision(args) => cmd_precision(args),
        Command::Scatter(args) => cmd_scatter(args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
