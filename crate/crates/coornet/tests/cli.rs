//! End-to-end tests of the `coornet` binary: every subcommand, the exit-code
//! contract, idempotence, and pipeline-equals-composition.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

fn coornet(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coornet"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn assert_ok(output: &Output) {
    assert!(
        output.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn unknown_flag_exits_2_with_usage() {
    let dir = tempfile::tempdir().unwrap();
    let output = coornet(&["detect", "--definitely-not-a-flag"], dir.path());
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("Usage") || stderr.contains("usage"), "{stderr}");
}

#[test]
fn unknown_subcommand_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let output = coornet(&["frobnicate"], dir.path());
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(coornet(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(coornet(&["--version"], dir.path()).status.code(), Some(0));
}

#[test]
fn conflicting_threshold_flags_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let output = coornet(
        &[
            "detect", "--input", "x.csv", "--output", "r.json", "--t1", "auto", "--t1-seconds",
            "9",
        ],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn missing_input_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let output = coornet(
        &["detect", "--input", "nope.csv", "--output", "r.json"],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn malformed_csv_reports_line_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.csv"),
        "tweet_id,retweet_id,author,retweeter,timestamp,urls\nt1,r1,a,b,notatime,\n",
    )
    .unwrap();
    let output = coornet(
        &["detect", "--input", "bad.csv", "--output", "r.json"],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn bad_mapping_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("raw.csv"), "a,b,t1,100\n").unwrap();
    std::fs::write(dir.path().join("map.json"), "{ not json").unwrap();
    let output = coornet(
        &[
            "ingest", "--input", "raw.csv", "--mapping", "map.json", "--output", "c.csv",
        ],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn ingest_maps_raw_layout_to_canonical() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("raw.csv"),
        "alice,bob,t1,2016-06-20T10:00:00Z\nalice,carol,t1,2016-06-20T10:00:05Z\n",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("map.json"),
        r#"{
            "columns": { "author": 1, "retweeter": 2, "tweet_id": 3, "timestamp": 4 },
            "timestamp_format": "iso8601",
            "retweet_id": "synthesize",
            "has_header": false
        }"#,
    )
    .unwrap();
    let output = coornet(
        &[
            "ingest", "--input", "raw.csv", "--mapping", "map.json", "--output", "c.csv",
        ],
        dir.path(),
    );
    assert_ok(&output);
    let canonical = std::fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(
        canonical,
        "tweet_id,retweet_id,author,retweeter,timestamp,urls\n\
         t1,t1#0,alice,bob,1466416800,\n\
         t1,t1#1,alice,carol,1466416805,\n"
    );
}

#[test]
fn detect_echoes_overridden_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&coornet(
        &["simulate", "--seed", "3", "--output", "data.csv"],
        dir.path(),
    ));
    let output = coornet(
        &[
            "detect", "--input", "data.csv", "--t1", "13", "--t2", "12", "--output",
            "report.json",
        ],
        dir.path(),
    );
    assert_ok(&output);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["thresholds"]["t1_seconds"], 13);
    assert_eq!(report["thresholds"]["t1_source"], "overridden");
    assert_eq!(report["thresholds"]["t2_count"], 12);
    assert_eq!(report["thresholds"]["t2_source"], "overridden");
}

#[test]
fn simulate_detect_evaluate_recovers_planted_bots() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&coornet(
        &[
            "simulate",
            "--seed",
            "7",
            "--output",
            "data.csv",
            "--truth-output",
            "truth.txt",
        ],
        dir.path(),
    ));
    assert_ok(&coornet(
        &[
            "detect", "--input", "data.csv", "--t1", "auto", "--t2", "auto", "--output",
            "report.json",
        ],
        dir.path(),
    ));
    let output = coornet(
        &[
            "evaluate",
            "--report",
            "report.json",
            "--truth",
            "truth.txt",
            "--input",
            "data.csv",
            "--output",
            "metrics.json",
        ],
        dir.path(),
    );
    assert_ok(&output);
    let text = stdout(&output);
    assert!(text.starts_with("recall="), "recall must lead: {text}");
    let metrics: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("metrics.json")).unwrap())
            .unwrap();
    assert!(metrics["recall"].as_f64().unwrap() >= 0.9);
}

#[test]
fn evaluate_without_universe_or_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&coornet(
        &["simulate", "--seed", "5", "--output", "d.csv", "--truth-output", "t.txt"],
        dir.path(),
    ));
    assert_ok(&coornet(
        &["detect", "--input", "d.csv", "--output", "r.json"],
        dir.path(),
    ));
    let output = coornet(
        &["evaluate", "--report", "r.json", "--truth", "t.txt"],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn sweep_writes_figure_shaped_csv() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&coornet(
        &[
            "simulate", "--seed", "11", "--output", "data.csv", "--truth-output", "truth.txt",
        ],
        dir.path(),
    ));
    let output = coornet(
        &[
            "sweep",
            "--input",
            "data.csv",
            "--truth",
            "truth.txt",
            "--t2-list",
            "10,12,15,30",
            "--output",
            "sweep.csv",
        ],
        dir.path(),
    );
    assert_ok(&output);
    let sweep = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = sweep.lines();
    assert_eq!(
        lines.next().unwrap(),
        "threshold2,total_predicted,predicted_correctly,total_bots,accuracy,precision,recall,f1"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    let t2_column: Vec<&str> = rows
        .iter()
        .map(|row| row.split(',').next().unwrap())
        .collect();
    assert_eq!(t2_column, vec!["10", "12", "15", "30"], "rows keep input order");
    // On the default scenario every bot pair co-retweets 40 groups, so
    // recall stays flat at 1.0 across these thresholds; check recall is
    // non-increasing as t2 rises (monotonicity at the CLI level).
    let recalls: Vec<f64> = rows
        .iter()
        .map(|row| row.split(',').nth(6).unwrap().parse().unwrap())
        .collect();
    for pair in recalls.windows(2) {
        assert!(pair[1] <= pair[0] + 1e-9);
    }
}

#[test]
fn amplify_ranks_planted_amplified_authors() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("scenario.json"),
        r#"{ "amplified_authors": ["boosted_star"], "seed": 21 }"#,
    )
    .unwrap();
    assert_ok(&coornet(
        &[
            "simulate",
            "--scenario",
            "scenario.json",
            "--output",
            "data.csv",
            "--truth-output",
            "truth.txt",
        ],
        dir.path(),
    ));
    assert_ok(&coornet(
        &["detect", "--input", "data.csv", "--output", "report.json"],
        dir.path(),
    ));
    let output = coornet(
        &[
            "amplify",
            "--input",
            "data.csv",
            "--report",
            "report.json",
            "--by",
            "account",
            "--top",
            "10",
            "--output",
            "pie.csv",
        ],
        dir.path(),
    );
    assert_ok(&output);
    let pie = std::fs::read_to_string(dir.path().join("pie.csv")).unwrap();
    let mut lines = pie.lines();
    assert_eq!(lines.next().unwrap(), "name,count,share");
    let first_row = lines.next().expect("at least one ranked author");
    assert!(
        first_row.starts_with("boosted_star,"),
        "planted author should rank first: {first_row}"
    );
}

#[test]
fn export_requires_communities_first() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&coornet(
        &["simulate", "--seed", "13", "--output", "data.csv"],
        dir.path(),
    ));
    assert_ok(&coornet(
        &["detect", "--input", "data.csv", "--output", "report.json"],
        dir.path(),
    ));
    let premature = coornet(
        &["export", "--report", "report.json", "--output", "graph.gexf"],
        dir.path(),
    );
    assert_eq!(premature.status.code(), Some(1));

    assert_ok(&coornet(
        &[
            "communities",
            "--report",
            "report.json",
            "--seed",
            "42",
            "--output",
            "report.json",
        ],
        dir.path(),
    ));
    for format in ["gexf", "graphml"] {
        let output = coornet(
            &[
                "export",
                "--report",
                "report.json",
                "--format",
                format,
                "--output",
                &format!("graph.{format}"),
            ],
            dir.path(),
        );
        assert_ok(&output);
        let text = std::fs::read_to_string(dir.path().join(format!("graph.{format}"))).unwrap();
        roxmltree::Document::parse(&text).unwrap();
    }
}

#[test]
fn subcommands_are_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    for _ in 0..2 {
        assert_ok(&coornet(
            &["simulate", "--seed", "17", "--output", "data.csv", "--truth-output", "truth.txt"],
            dir.path(),
        ));
    }
    let data_a = std::fs::read(dir.path().join("data.csv")).unwrap();
    assert_ok(&coornet(
        &["simulate", "--seed", "17", "--output", "data.csv"],
        dir.path(),
    ));
    assert_eq!(data_a, std::fs::read(dir.path().join("data.csv")).unwrap());

    for _ in 0..2 {
        assert_ok(&coornet(
            &["detect", "--input", "data.csv", "--output", "report.json"],
            dir.path(),
        ));
    }
    let report_a = std::fs::read(dir.path().join("report.json")).unwrap();
    assert_ok(&coornet(
        &["detect", "--input", "data.csv", "--output", "report.json"],
        dir.path(),
    ));
    assert_eq!(report_a, std::fs::read(dir.path().join("report.json")).unwrap());
}

/// `pipeline` must equal running the stages by hand on the same files.
#[test]
fn pipeline_equals_composition_of_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("scenario.json"),
        r#"{ "seed": 23, "n_groups": 400, "n_humans": 900 }"#,
    )
    .unwrap();

    // The pipeline, in one shot.
    assert_ok(&coornet(
        &[
            "pipeline",
            "--scenario",
            "scenario.json",
            "--outdir",
            "auto",
        ],
        dir.path(),
    ));

    // The same stages, by hand.
    let manual = dir.path().join("manual");
    std::fs::create_dir_all(&manual).unwrap();
    assert_ok(&coornet(
        &[
            "simulate",
            "--scenario",
            "scenario.json",
            "--output",
            "manual/canonical.csv",
            "--truth-output",
            "manual/truth.txt",
        ],
        dir.path(),
    ));
    assert_ok(&coornet(
        &[
            "detect",
            "--input",
            "manual/canonical.csv",
            "--label",
            "pipeline",
            "--output",
            "manual/report.json",
        ],
        dir.path(),
    ));
    assert_ok(&coornet(
        &[
            "communities",
            "--report",
            "manual/report.json",
            "--seed",
            "42",
            "--output",
            "manual/report.json",
        ],
        dir.path(),
    ));
    assert_ok(&coornet(
        &[
            "amplify",
            "--input",
            "manual/canonical.csv",
            "--report",
            "manual/report.json",
            "--by",
            "account",
            "--output",
            "manual/amplified_accounts.csv",
            "--report-output",
            "manual/report.json",
        ],
        dir.path(),
    ));
    assert_ok(&coornet(
        &[
            "amplify",
            "--input",
            "manual/canonical.csv",
            "--report",
            "manual/report.json",
            "--by",
            "domain",
            "--output",
            "manual/amplified_domains.csv",
            "--report-output",
            "manual/report.json",
        ],
        dir.path(),
    ));
    assert_ok(&coornet(
        &[
            "evaluate",
            "--report",
            "manual/report.json",
            "--truth",
            "manual/truth.txt",
            "--input",
            "manual/canonical.csv",
            "--output",
            "manual/metrics.json",
            "--report-output",
            "manual/report.json",
        ],
        dir.path(),
    ));
    assert_ok(&coornet(
        &[
            "export",
            "--report",
            "manual/report.json",
            "--format",
            "gexf",
            "--output",
            "manual/graph.gexf",
        ],
        dir.path(),
    ));

    for artifact in [
        "canonical.csv",
        "truth.txt",
        "report.json",
        "amplified_accounts.csv",
        "amplified_domains.csv",
        "metrics.json",
        "graph.gexf",
    ] {
        let auto = std::fs::read(dir.path().join("auto").join(artifact)).unwrap();
        let by_hand = std::fs::read(dir.path().join("manual").join(artifact)).unwrap();
        assert_eq!(auto, by_hand, "{artifact} differs between pipeline and composition");
    }
}

#[test]
fn pipeline_from_existing_canonical_file() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&coornet(
        &["simulate", "--seed", "29", "--output", "data.csv", "--truth-output", "truth.txt"],
        dir.path(),
    ));
    let output = coornet(
        &[
            "pipeline",
            "--input",
            "data.csv",
            "--truth",
            "truth.txt",
            "--format",
            "graphml",
            "--outdir",
            "out",
        ],
        dir.path(),
    );
    assert_ok(&output);
    for artifact in ["report.json", "metrics.json", "graph.graphml"] {
        assert!(
            dir.path().join("out").join(artifact).exists(),
            "{artifact} missing"
        );
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/report.json")).unwrap())
            .unwrap();
    let tier1 = report["tier1"].as_array().unwrap();
    let truth: BTreeSet<String> =
        std::fs::read_to_string(dir.path().join("truth.txt"))
            .unwrap()
            .lines()
            .map(str::to_string)
            .collect();
    let found = tier1
        .iter()
        .filter(|account| truth.contains(account.as_str().unwrap()))
        .count();
    assert!(found * 10 >= truth.len() * 9, "tier1 missed too many bots");
}
