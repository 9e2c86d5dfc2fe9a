//! Everything end to end: simulate, detect, label communities, rank
//! amplification, evaluate, and write the report plus all export files.
//!
//! Run with: `cargo run --example full_pipeline`

use coornet::detect::{detect, DetectionParams};
use coornet::evaluate::{evaluate, TierSelector};
use coornet::ingest::{group_tweets, read_canonical_file, write_canonical_file};
use coornet::report::{
    build_report, emit_pie_data_file, export_graph_file, write_report_file, GraphFormat,
};
use coornet::synth::{generate, SynthConfig};
use coornet::{amplified_accounts, louvain};

fn main() {
    let out_dir = std::env::temp_dir().join("coornet_pipeline_example");
    std::fs::create_dir_all(&out_dir).unwrap();

    // 1. Simulate and round-trip through the canonical CSV, exactly as the
    //    file-based CLI would.
    let config = SynthConfig {
        amplified_authors: vec!["campaign_hq".into()],
        ..SynthConfig::default()
    };
    let (records, truth) = generate(&config).unwrap();
    let csv_path = out_dir.join("canonical.csv");
    write_canonical_file(&csv_path, &records).unwrap();
    let records = read_canonical_file(&csv_path).unwrap();
    println!("1. simulated {} records -> {}", records.len(), csv_path.display());

    // 2. Detect.
    let groups = group_tweets(&records);
    let params = DetectionParams::default();
    let detection = detect(&groups, &params).unwrap();
    println!(
        "2. detected: t1={} s, t2={}, tier1={}, tier2={}",
        detection.tiers.thresholds.t1_seconds,
        detection.tiers.thresholds.t2_count,
        detection.tiers.tier1.len(),
        detection.tiers.tier2.len()
    );

    // 3. Communities.
    let communities = louvain(&detection.graph, 1.0, 42).unwrap();
    println!(
        "3. louvain: {} communities, modularity {:.4}",
        communities.community_count(),
        communities.modularity
    );

    // 4. Amplification.
    let coordinated = detection.coordinated_group_ids(&groups, false);
    let ranking = amplified_accounts(&groups, &coordinated, 10);
    let pie_path = out_dir.join("amplified_accounts.csv");
    emit_pie_data_file(&pie_path, &ranking).unwrap();
    println!(
        "4. amplification: top account `{}` with {} coordinated retweets",
        ranking.entries[0].name, ranking.entries[0].count
    );

    // 5. Evaluate against the generated ground truth.
    let universe = records.iter().map(|r| r.retweeter.clone()).collect();
    let predicted = TierSelector::Both.select(&detection.tiers.tier1, &detection.tiers.tier2);
    let metrics = evaluate(&predicted, &truth, &universe).unwrap();
    println!(
        "5. evaluation: recall {:.4}, precision {:.4}",
        metrics.recall, metrics.precision
    );

    // 6. Report and graph exports.
    let mut report = build_report("example", &params, &detection, groups.len() as u64, &coordinated);
    report.communities = Some(communities.clone());
    report.amplification.accounts = Some(ranking);
    report.metrics = Some(metrics);
    let report_path = out_dir.join("report.json");
    write_report_file(&report_path, &report).unwrap();
    let gexf_path = out_dir.join("graph.gexf");
    export_graph_file(&gexf_path, &detection.graph, &communities, GraphFormat::Gexf).unwrap();
    println!("6. wrote {} and {}", report_path.display(), gexf_path.display());

    println!("\nSame flow as: coornet pipeline --scenario scenario.json --outdir OUT");
}
