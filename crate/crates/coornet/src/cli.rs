//! Command-line front end: `ingest`, `detect`, `communities`, `amplify`,
//! `evaluate`, `sweep`, `export`, `simulate` and `pipeline` subcommands
//! over file-based intermediates (canonical CSV in, report JSON through,
//! graph/pie/metrics files out).
//!
//! Exit codes: 0 success, 1 input error, 2 configuration error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::amplify::{amplified_accounts, amplified_domains};
use crate::community::louvain;
use crate::detect::{detect, DetectionParams};
use crate::error::{Error, Result};
use crate::evaluate::{evaluate, read_truth_file, sweep_t2, Metrics, SweepRow, TierSelector};
use crate::ingest::{
    group_tweets, parse_mapped, read_canonical_file, write_canonical_file, ColumnMapping,
    RetweetRecord,
};
use crate::logging;
use crate::report::{
    build_report, emit_pie_data_file, export_graph_file, read_report_file, write_report_file,
    DetectionReport, GraphFormat,
};
use crate::synth::{generate, SynthConfig};

/// `auto` or a fixed numeric value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ThresholdArg {
    Auto,
    Fixed(u64),
}

impl std::str::FromStr for ThresholdArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "auto" {
            Ok(ThresholdArg::Auto)
        } else {
            s.parse::<u64>()
                .map(ThresholdArg::Fixed)
                .map_err(|_| format!("expected `auto` or a non-negative integer, got `{s}`"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RankBy {
    Account,
    Domain,
}

impl std::str::FromStr for RankBy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "account" => Ok(RankBy::Account),
            "domain" => Ok(RankBy::Domain),
            other => Err(format!("unknown ranking `{other}` (expected account or domain)")),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "coornet",
    version,
    about = "Detect coordinated retweet networks, the accounts they amplify, and export the evidence"
)]
struct Cli {
    /// Raise log verbosity (-v info, -vv debug); overrides COORNET_LOG.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Silence warnings.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DetectionFlags {
    /// Threshold 1 in seconds, or `auto` to estimate it.
    #[arg(long, default_value = "auto", conflicts_with = "t1_seconds")]
    t1: ThresholdArg,

    /// Fixed Threshold 1 in seconds (same as `--t1 N`).
    #[arg(long)]
    t1_seconds: Option<u64>,

    /// Threshold 2 as a co-retweet count, or `auto` to estimate it.
    #[arg(long, default_value = "auto", conflicts_with = "t2_count")]
    t2: ThresholdArg,

    /// Fixed Threshold 2 (same as `--t2 N`).
    #[arg(long)]
    t2_count: Option<u64>,

    /// Fraction of fastest groups used for Threshold-1 estimation.
    #[arg(long, default_value_t = 0.10)]
    decile_fraction: f64,

    /// Fraction of a group's retweets defining "reach half".
    #[arg(long, default_value_t = 0.50)]
    half_fraction: f64,

    /// Pair-enumeration cap per group (unset: enumerate everything).
    #[arg(long)]
    max_group_pair_size: Option<usize>,
}

impl DetectionFlags {
    fn to_params(&self) -> DetectionParams {
        let pick = |arg: ThresholdArg, fixed: Option<u64>| match (arg, fixed) {
            (_, Some(n)) => Some(n),
            (ThresholdArg::Fixed(n), None) => Some(n),
            (ThresholdArg::Auto, None) => None,
        };
        DetectionParams {
            decile_fraction: self.decile_fraction,
            half_fraction: self.half_fraction,
            t1_override: pick(self.t1, self.t1_seconds),
            t2_override: pick(self.t2, self.t2_count),
            max_group_pair_size: self.max_group_pair_size,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a raw dataset to the canonical CSV via a column mapping.
    Ingest {
        /// Raw CSV file.
        #[arg(long)]
        input: PathBuf,
        /// Column-mapping JSON document.
        #[arg(long)]
        mapping: PathBuf,
        /// Canonical CSV destination.
        #[arg(long)]
        output: PathBuf,
    },

    /// Run both detection phases and write the report JSON.
    Detect {
        /// Canonical CSV file.
        #[arg(long)]
        input: PathBuf,
        /// Dataset label echoed into the report (default: input file name).
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        flags: DetectionFlags,
        /// Tier(s) counted as predictions in the summary line.
        #[arg(long, default_value = "both")]
        tier: TierSelector,
        /// Report JSON destination.
        #[arg(long)]
        output: PathBuf,
    },

    /// Label the highly coordinated graph with Louvain communities.
    Communities {
        /// Report JSON produced by `detect`.
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        resolution: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Updated report destination (may equal --report).
        #[arg(long)]
        output: PathBuf,
        /// Optional `account,community` CSV.
        #[arg(long)]
        labels_output: Option<PathBuf>,
    },

    /// Rank the accounts or domains amplified by coordinated groups.
    Amplify {
        /// Canonical CSV file.
        #[arg(long)]
        input: PathBuf,
        /// Report JSON carrying the coordinated group ids.
        #[arg(long)]
        report: PathBuf,
        /// What to rank.
        #[arg(long, default_value = "account")]
        by: RankBy,
        /// Ranking size.
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Use only the suspect groups as the coordinated set.
        #[arg(long)]
        suspect_only: bool,
        /// Pie-chart CSV destination.
        #[arg(long)]
        output: PathBuf,
        /// Also write the report with the ranking attached.
        #[arg(long)]
        report_output: Option<PathBuf>,
    },

    /// Score the detected bots against a ground-truth list.
    Evaluate {
        /// Report JSON carrying the tier lists.
        #[arg(long)]
        report: PathBuf,
        /// Ground-truth bot list (one account per line, `#` comments).
        #[arg(long)]
        truth: PathBuf,
        /// Explicit universe file; default is every retweeter in --input.
        #[arg(long)]
        universe: Option<PathBuf>,
        /// Canonical CSV for the default universe.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Tier(s) treated as predictions.
        #[arg(long, default_value = "both")]
        tier: TierSelector,
        /// Metrics JSON destination.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the report with metrics attached.
        #[arg(long)]
        report_output: Option<PathBuf>,
    },

    /// Re-run detection across Threshold-2 values and tabulate metrics.
    Sweep {
        /// Canonical CSV file.
        #[arg(long)]
        input: PathBuf,
        /// Ground-truth bot list.
        #[arg(long)]
        truth: PathBuf,
        /// Explicit universe file; default is every retweeter in --input.
        #[arg(long)]
        universe: Option<PathBuf>,
        /// Comma-separated Threshold-2 values, e.g. `10,12,15,30`.
        #[arg(long, value_delimiter = ',', required = true)]
        t2_list: Vec<u64>,
        #[arg(long, default_value = "both")]
        tier: TierSelector,
        #[command(flatten)]
        flags: DetectionFlags,
        /// Sweep CSV destination.
        #[arg(long)]
        output: PathBuf,
    },

    /// Export the coordination graph for Gephi.
    Export {
        /// Report JSON with community labels.
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value = "gexf")]
        format: GraphFormat,
        /// Graph file destination.
        #[arg(long)]
        output: PathBuf,
    },

    /// Generate a synthetic dataset with planted botnets.
    Simulate {
        /// Scenario JSON; defaults to the built-in scenario.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Canonical CSV destination.
        #[arg(long)]
        output: PathBuf,
        /// Ground-truth list destination.
        #[arg(long)]
        truth_output: Option<PathBuf>,
    },

    /// Run every stage in order inside one output directory.
    Pipeline {
        /// Canonical CSV input (or raw CSV when --mapping is given).
        #[arg(long, required_unless_present = "scenario", conflicts_with = "scenario")]
        input: Option<PathBuf>,
        /// Column mapping for raw input.
        #[arg(long, requires = "input")]
        mapping: Option<PathBuf>,
        /// Simulate this scenario instead of reading an input file.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Seed override for --scenario.
        #[arg(long, requires = "scenario")]
        seed: Option<u64>,
        /// Ground-truth list; enables the evaluate stage. With --scenario
        /// the generated truth is used automatically.
        #[arg(long)]
        truth: Option<PathBuf>,
        #[command(flatten)]
        flags: DetectionFlags,
        #[arg(long, default_value_t = 1.0)]
        resolution: f64,
        /// Louvain seed.
        #[arg(long, default_value_t = 42)]
        louvain_seed: u64,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long, default_value = "both")]
        tier: TierSelector,
        #[arg(long, default_value = "gexf")]
        format: GraphFormat,
        /// Directory receiving every artifact.
        #[arg(long)]
        outdir: PathBuf,
    },
}

/// Parse `argv` and run. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };

    if cli.quiet {
        logging::set_level(logging::Level::Quiet);
    } else {
        match cli.verbose {
            0 => {}
            1 => logging::set_level(logging::Level::Info),
            _ => logging::set_level(logging::Level::Debug),
        }
    }

    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_config() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Ingest {
            input,
            mapping,
            output,
        } => cmd_ingest(&input, &mapping, &output),
        Command::Detect {
            input,
            label,
            flags,
            tier,
            output,
        } => cmd_detect(&input, label, &flags.to_params(), tier, &output),
        Command::Communities {
            report,
            resolution,
            seed,
            output,
            labels_output,
        } => cmd_communities(&report, resolution, seed, &output, labels_output.as_deref()),
        Command::Amplify {
            input,
            report,
            by,
            top,
            suspect_only,
            output,
            report_output,
        } => cmd_amplify(
            &input,
            &report,
            by,
            top,
            suspect_only,
            &output,
            report_output.as_deref(),
        ),
        Command::Evaluate {
            report,
            truth,
            universe,
            input,
            tier,
            output,
            report_output,
        } => cmd_evaluate(
            &report,
            &truth,
            universe.as_deref(),
            input.as_deref(),
            tier,
            output.as_deref(),
            report_output.as_deref(),
        ),
        Command::Sweep {
            input,
            truth,
            universe,
            t2_list,
            tier,
            flags,
            output,
        } => cmd_sweep(
            &input,
            &truth,
            universe.as_deref(),
            &t2_list,
            tier,
            &flags.to_params(),
            &output,
        ),
        Command::Export {
            report,
            format,
            output,
        } => cmd_export(&report, format, &output),
        Command::Simulate {
            scenario,
            seed,
            output,
            truth_output,
        } => cmd_simulate(scenario.as_deref(), seed, &output, truth_output.as_deref()),
        Command::Pipeline {
            input,
            mapping,
            scenario,
            seed,
            truth,
            flags,
            resolution,
            louvain_seed,
            top,
            tier,
            format,
            outdir,
        } => cmd_pipeline(PipelineArgs {
            input,
            mapping,
            scenario,
            seed,
            truth,
            params: flags.to_params(),
            resolution,
            louvain_seed,
            top,
            tier,
            format,
            outdir,
        }),
    }
}

fn cmd_ingest(input: &Path, mapping: &Path, output: &Path) -> Result<()> {
    let mapping = ColumnMapping::from_path(mapping)?;
    let file =
        std::fs::File::open(input).map_err(|e| Error::io(input.display().to_string(), e))?;
    let records = parse_mapped(std::io::BufReader::new(file), &mapping)?;
    write_canonical_file(output, &records)?;
    logging::info(format!(
        "ingested {} records from {} into {}",
        records.len(),
        input.display(),
        output.display()
    ));
    println!("records={}", records.len());
    Ok(())
}

fn run_detection(
    records: &[RetweetRecord],
    label: String,
    params: &DetectionParams,
) -> Result<DetectionReport> {
    let groups = group_tweets(records);
    let detection = detect(&groups, params)?;
    let coordinated = detection.coordinated_group_ids(&groups, false);
    Ok(build_report(
        label,
        params,
        &detection,
        groups.len() as u64,
        &coordinated,
    ))
}

fn cmd_detect(
    input: &Path,
    label: Option<String>,
    params: &DetectionParams,
    tier: TierSelector,
    output: &Path,
) -> Result<()> {
    let records = read_canonical_file(input)?;
    let label = label.unwrap_or_else(|| {
        input
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| input.display().to_string())
    });
    let report = run_detection(&records, label, params)?;
    write_report_file(output, &report)?;
    let predicted = match tier {
        TierSelector::Tier1 => report.tier1.len(),
        TierSelector::Tier2 => report.tier2.len(),
        TierSelector::Both => report.tier1.len() + report.tier2.len(),
    };
    println!(
        "t1={} ({:?}) t2={} ({:?}) suspect_groups={} tier1={} tier2={} predicted={}",
        report.thresholds.t1_seconds,
        report.thresholds.t1_source,
        report.thresholds.t2_count,
        report.thresholds.t2_source,
        report.suspect_group_ids.len(),
        report.tier1.len(),
        report.tier2.len(),
        predicted,
    );
    Ok(())
}

fn cmd_communities(
    report_path: &Path,
    resolution: f64,
    seed: u64,
    output: &Path,
    labels_output: Option<&Path>,
) -> Result<()> {
    let mut report = read_report_file(report_path)?;
    let graph = report.graph.to_graph();
    let assignment = louvain(&graph, resolution, seed)?;
    println!(
        "communities={} modularity={:.6}",
        assignment.community_count(),
        assignment.modularity
    );
    if let Some(path) = labels_output {
        let mut body = String::from("account,community\n");
        for (account, community) in &assignment.labels {
            body.push_str(&format!("{account},{community}\n"));
        }
        std::fs::write(path, body).map_err(|e| Error::io(path.display().to_string(), e))?;
    }
    report.communities = Some(assignment);
    write_report_file(output, &report)
}

fn cmd_amplify(
    input: &Path,
    report_path: &Path,
    by: RankBy,
    top: usize,
    suspect_only: bool,
    output: &Path,
    report_output: Option<&Path>,
) -> Result<()> {
    if top == 0 {
        return Err(Error::InvalidConfig("--top must be at least 1".into()));
    }
    let records = read_canonical_file(input)?;
    let mut report = read_report_file(report_path)?;
    let coordinated: BTreeSet<String> = if suspect_only {
        report.suspect_group_ids.iter().cloned().collect()
    } else {
        report.coordinated_group_ids.iter().cloned().collect()
    };
    let ranking = match by {
        RankBy::Account => {
            let groups = group_tweets(&records);
            amplified_accounts(&groups, &coordinated, top)
        }
        RankBy::Domain => amplified_domains(&records, &coordinated, top),
    };
    emit_pie_data_file(output, &ranking)?;
    for entry in &ranking.entries {
        println!("{},{},{:.4}", entry.name, entry.count, entry.share);
    }
    if ranking.skipped_urls > 0 {
        logging::warn(format!(
            "{} URLs had no parseable host and were skipped",
            ranking.skipped_urls
        ));
    }
    match by {
        RankBy::Account => report.amplification.accounts = Some(ranking),
        RankBy::Domain => report.amplification.domains = Some(ranking),
    }
    if let Some(path) = report_output {
        write_report_file(path, &report)?;
    }
    Ok(())
}

fn universe_from(
    universe_path: Option<&Path>,
    input: Option<&Path>,
) -> Result<BTreeSet<String>> {
    match (universe_path, input) {
        (Some(path), _) => read_truth_file(path),
        (None, Some(input)) => {
            let records = read_canonical_file(input)?;
            Ok(records.into_iter().map(|r| r.retweeter).collect())
        }
        (None, None) => Err(Error::InvalidConfig(
            "supply --universe FILE or --input CSV to define the account universe".into(),
        )),
    }
}

fn print_metrics(metrics: &Metrics) {
    // Recall leads: the positive class is tiny, so it is the headline number.
    println!(
        "recall={:.4} precision={:.4} f1={:.4} accuracy={:.4} tp={} fp={} fn={} tn={}",
        metrics.recall,
        metrics.precision,
        metrics.f1,
        metrics.accuracy,
        metrics.tp,
        metrics.fp,
        metrics.fn_,
        metrics.tn,
    );
}

fn cmd_evaluate(
    report_path: &Path,
    truth_path: &Path,
    universe_path: Option<&Path>,
    input: Option<&Path>,
    tier: TierSelector,
    output: Option<&Path>,
    report_output: Option<&Path>,
) -> Result<()> {
    let mut report = read_report_file(report_path)?;
    let truth = read_truth_file(truth_path)?;
    let universe = universe_from(universe_path, input)?;
    let tier1: BTreeSet<String> = report.tier1.iter().cloned().collect();
    let tier2: BTreeSet<String> = report.tier2.iter().cloned().collect();
    let predicted = tier.select(&tier1, &tier2);
    let metrics = evaluate(&predicted, &truth, &universe)?;
    print_metrics(&metrics);
    if let Some(path) = output {
        let json = serde_json::to_string_pretty(&metrics).map_err(|e| Error::Json {
            path: path.display().to_string(),
            source: e,
        })?;
        std::fs::write(path, json + "\n").map_err(|e| Error::io(path.display().to_string(), e))?;
    }
    report.metrics = Some(metrics);
    if let Some(path) = report_output {
        write_report_file(path, &report)?;
    }
    Ok(())
}

fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut body = String::from(
        "threshold2,total_predicted,predicted_correctly,total_bots,accuracy,precision,recall,f1\n",
    );
    for row in rows {
        body.push_str(&format!(
            "{},{},{},{},{:.4},{:.4},{:.4},{:.4}\n",
            row.t2,
            row.total_predicted,
            row.predicted_correctly,
            row.total_bots,
            row.metrics.accuracy,
            row.metrics.precision,
            row.metrics.recall,
            row.metrics.f1,
        ));
    }
    std::fs::write(path, body).map_err(|e| Error::io(path.display().to_string(), e))
}

fn cmd_sweep(
    input: &Path,
    truth_path: &Path,
    universe_path: Option<&Path>,
    t2_list: &[u64],
    tier: TierSelector,
    params: &DetectionParams,
    output: &Path,
) -> Result<()> {
    let records = read_canonical_file(input)?;
    let truth = read_truth_file(truth_path)?;
    let universe = match universe_path {
        Some(path) => read_truth_file(path)?,
        None => records.iter().map(|r| r.retweeter.clone()).collect(),
    };
    let groups = group_tweets(&records);
    let rows = sweep_t2(&groups, &truth, &universe, t2_list, tier, params)?;
    write_sweep_csv(output, &rows)?;
    for row in &rows {
        println!(
            "t2={} predicted={} correct={} recall={:.4} precision={:.4}",
            row.t2,
            row.total_predicted,
            row.predicted_correctly,
            row.metrics.recall,
            row.metrics.precision,
        );
    }
    Ok(())
}

fn cmd_export(report_path: &Path, format: GraphFormat, output: &Path) -> Result<()> {
    let report = read_report_file(report_path)?;
    let communities = report.communities.as_ref().ok_or_else(|| {
        Error::Estimation(
            "report has no community labels; run `communities` before `export`".into(),
        )
    })?;
    let graph = report.graph.to_graph();
    export_graph_file(output, &graph, communities, format)?;
    logging::info(format!("wrote {}", output.display()));
    Ok(())
}

fn cmd_simulate(
    scenario: Option<&Path>,
    seed: Option<u64>,
    output: &Path,
    truth_output: Option<&Path>,
) -> Result<()> {
    let mut config = match scenario {
        Some(path) => SynthConfig::from_path(path)?,
        None => SynthConfig::default(),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let (records, truth) = generate(&config)?;
    write_canonical_file(output, &records)?;
    if let Some(path) = truth_output {
        crate::evaluate::write_truth_file(path, &truth)?;
    }
    println!("records={} bots={}", records.len(), truth.len());
    Ok(())
}

struct PipelineArgs {
    input: Option<PathBuf>,
    mapping: Option<PathBuf>,
    scenario: Option<PathBuf>,
    seed: Option<u64>,
    truth: Option<PathBuf>,
    params: DetectionParams,
    resolution: f64,
    louvain_seed: u64,
    top: usize,
    tier: TierSelector,
    format: GraphFormat,
    outdir: PathBuf,
}

fn cmd_pipeline(args: PipelineArgs) -> Result<()> {
    std::fs::create_dir_all(&args.outdir)
        .map_err(|e| Error::io(args.outdir.display().to_string(), e))?;
    let canonical = args.outdir.join("canonical.csv");

    // Stage 0: bring the data into canonical form.
    let mut truth_path = args.truth.clone();
    if let Some(scenario) = &args.scenario {
        let generated_truth = args.outdir.join("truth.txt");
        cmd_simulate(
            Some(scenario.as_path()),
            args.seed,
            &canonical,
            Some(generated_truth.as_path()),
        )?;
        truth_path.get_or_insert(generated_truth);
    } else {
        let input = args.input.as_ref().expect("clap enforces input|scenario");
        match &args.mapping {
            Some(mapping) => cmd_ingest(input, mapping, &canonical)?,
            None => {
                // Validate and normalize even when already canonical.
                let records = read_canonical_file(input)?;
                write_canonical_file(&canonical, &records)?;
            }
        }
    }

    // Stage 1: detection. The fixed label keeps the report independent of
    // the output directory name.
    let report_path = args.outdir.join("report.json");
    cmd_detect(
        &canonical,
        Some("pipeline".into()),
        &args.params,
        args.tier,
        &report_path,
    )?;

    // Stage 2: communities (skipped when nothing coordinates).
    let report = read_report_file(&report_path)?;
    let has_graph = !report.graph.nodes.is_empty();
    if has_graph {
        cmd_communities(
            &report_path,
            args.resolution,
            args.louvain_seed,
            &report_path,
            None,
        )?;
    } else {
        logging::warn("coordination graph is empty; skipping communities and export");
    }

    // Stage 3: amplification rankings.
    cmd_amplify(
        &canonical,
        &report_path,
        RankBy::Account,
        args.top,
        false,
        &args.outdir.join("amplified_accounts.csv"),
        Some(&report_path),
    )?;
    cmd_amplify(
        &canonical,
        &report_path,
        RankBy::Domain,
        args.top,
        false,
        &args.outdir.join("amplified_domains.csv"),
        Some(&report_path),
    )?;

    // Stage 4: evaluation, when ground truth exists.
    if let Some(truth) = &truth_path {
        cmd_evaluate(
            &report_path,
            truth,
            None,
            Some(&canonical),
            args.tier,
            Some(&args.outdir.join("metrics.json")),
            Some(&report_path),
        )?;
    }

    // Stage 5: graph export.
    if has_graph {
        let extension = match args.format {
            GraphFormat::Gexf => "gexf",
            GraphFormat::Graphml => "graphml",
        };
        cmd_export(
            &report_path,
            args.format,
            &args.outdir.join(format!("graph.{extension}")),
        )?;
    }

    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "pipeline complete: {}", args.outdir.display());
    Ok(())
}
